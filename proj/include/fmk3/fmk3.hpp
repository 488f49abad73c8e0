#pragma once

// Exact-arithmetic toolkit for counting Fourier-Mukai partners of K3
// surfaces: even lattices and their discriminant forms, partner enumeration
// through special Mukai vectors, double-coset counting over discriminant
// isometry groups, and the indefinite binary quadratic form arithmetic
// feeding the Picard-number-2 counts.

#include "fmk3/bqf.hpp"
#include "fmk3/disc_form.hpp"
#include "fmk3/fm_counting.hpp"
#include "fmk3/fm_partners.hpp"
#include "fmk3/json_io.hpp"
#include "fmk3/lattice.hpp"
#include "fmk3/matrix.hpp"
#include "fmk3/numeric.hpp"
#include "fmk3/smith.hpp"
