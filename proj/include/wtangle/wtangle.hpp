#pragma once

#include "wtangle/audit.hpp"
#include "wtangle/density_matrix.hpp"
#include "wtangle/error.hpp"
#include "wtangle/json_io.hpp"
#include "wtangle/linalg.hpp"
#include "wtangle/measures.hpp"
#include "wtangle/sampling.hpp"
#include "wtangle/separability.hpp"
#include "wtangle/states.hpp"
#include "wtangle/sweep.hpp"
