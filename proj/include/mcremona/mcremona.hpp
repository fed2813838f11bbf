#pragma once

// Umbrella header.

#include "mcremona/integer.hpp"
#include "mcremona/matrix.hpp"
#include "mcremona/monomial.hpp"
#include "mcremona/inversion.hpp"
#include "mcremona/degree2.hpp"
#include "mcremona/hilbert.hpp"
#include "mcremona/report.hpp"
