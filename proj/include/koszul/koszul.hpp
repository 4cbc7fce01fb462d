#pragma once

#include "koszul/errors.hpp"
#include "koszul/rational.hpp"
#include "koszul/linalg.hpp"
#include "koszul/tensor.hpp"
#include "koszul/forms.hpp"
#include "koszul/algebra.hpp"
#include "koszul/connection.hpp"
#include "koszul/gauge.hpp"
#include "koszul/invariants.hpp"
#include "koszul/cohomology.hpp"
#include "koszul/spencer.hpp"
#include "koszul/flat_models.hpp"
#include "koszul/statmodel.hpp"
#include "koszul/catalog.hpp"
