#pragma once

#include "oltsp/adversaries.hpp"
#include "oltsp/algorithms.hpp"
#include "oltsp/core.hpp"
#include "oltsp/engine.hpp"
#include "oltsp/experiment.hpp"
#include "oltsp/io.hpp"
#include "oltsp/oracle.hpp"
#include "oltsp/predictions.hpp"
#include "oltsp/report.hpp"
#include "oltsp/rng.hpp"
