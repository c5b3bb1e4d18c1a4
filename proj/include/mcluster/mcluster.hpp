#pragma once

#include "mcluster/errors.hpp"
#include "mcluster/linalg.hpp"
#include "mcluster/quiver.hpp"
#include "mcluster/ar_quiver.hpp"
#include "mcluster/derived.hpp"
#include "mcluster/mesh_basis.hpp"
#include "mcluster/cluster.hpp"
#include "mcluster/localise.hpp"
#include "mcluster/endo.hpp"
#include "mcluster/verify.hpp"
