#ifndef RECSPEC_RECSPEC_HPP
#define RECSPEC_RECSPEC_HPP

#include "errors.hpp"
#include "matrix.hpp"
#include "numkernel.hpp"
#include "vandermonde.hpp"
#include "recurrence.hpp"
#include "spectral.hpp"
#include "markov.hpp"
#include "graphs.hpp"

#endif // RECSPEC_RECSPEC_HPP
