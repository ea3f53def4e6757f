#pragma once

#include "hcomp/completion.hpp"
#include "hcomp/errors.hpp"
#include "hcomp/generators.hpp"
#include "hcomp/graph.hpp"
#include "hcomp/hamilton.hpp"
#include "hcomp/local_estimator.hpp"
#include "hcomp/motifs.hpp"
#include "hcomp/oracle.hpp"
#include "hcomp/path_cover.hpp"
#include "hcomp/process.hpp"
#include "hcomp/rng.hpp"
#include "hcomp/stats.hpp"
#include "hcomp/strong_core.hpp"
#include "hcomp/version.hpp"
