#pragma once

#include "cosymp/scalar.hpp"
#include "cosymp/error.hpp"
#include "cosymp/matrix.hpp"
#include "cosymp/linalg.hpp"
#include "cosymp/subspace.hpp"
#include "cosymp/space.hpp"
#include "cosymp/constructions.hpp"
#include "cosymp/forms.hpp"
#include "cosymp/chart.hpp"
#include "cosymp/homotopy.hpp"
#include "cosymp/moser.hpp"
#include "cosymp/torus.hpp"
#include "cosymp/corpus.hpp"
