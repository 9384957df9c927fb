#pragma once

// Umbrella header: exact enumeration of vertex and fundamental normal
// surfaces of generalized 3-manifold triangulations.

#include "nsurf/cone.hpp"
#include "nsurf/deadline.hpp"
#include "nsurf/errors.hpp"
#include "nsurf/face_decomposition.hpp"
#include "nsurf/hilbert_dual.hpp"
#include "nsurf/hilbert_primal.hpp"
#include "nsurf/integer.hpp"
#include "nsurf/linalg.hpp"
#include "nsurf/oracle.hpp"
#include "nsurf/report.hpp"
#include "nsurf/triangulation.hpp"
#include "nsurf/vertex_enum.hpp"
#include "nsurf/zeroset.hpp"
