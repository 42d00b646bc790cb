#ifndef VFCSR_VFCSR_HPP
#define VFCSR_VFCSR_HPP

#include "algebra.hpp"
#include "analysis.hpp"
#include "connection.hpp"
#include "error.hpp"
#include "integer.hpp"
#include "matrix.hpp"
#include "number_theory.hpp"
#include "register.hpp"
#include "search.hpp"
#include "tables.hpp"

#endif // VFCSR_VFCSR_HPP
