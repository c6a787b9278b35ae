// jcm.hpp — Umbrella header for the two-mode dispersive JCM laboratory.

#pragma once

#include "jcm/core.hpp"
#include "jcm/hilbert.hpp"
#include "jcm/linalg.hpp"
#include "jcm/model.hpp"
#include "jcm/schrieffer_wolff.hpp"
#include "jcm/effective.hpp"
#include "jcm/dynamics.hpp"
#include "jcm/config.hpp"
#include "jcm/cli.hpp"
