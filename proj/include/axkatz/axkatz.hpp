#pragma once

#include "congruence.hpp"
#include "exactmod.hpp"
#include "intpoly.hpp"
#include "invariants.hpp"
#include "multipoly.hpp"
#include "report.hpp"
#include "residues.hpp"
#include "zerosum.hpp"
