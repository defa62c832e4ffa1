#pragma once

#include "catalog.hpp"
#include "cocliques.hpp"
#include "complements.hpp"
#include "dergraph.hpp"
#include "ekr_module.hpp"
#include "group.hpp"
#include "perm.hpp"
#include "spectra.hpp"
