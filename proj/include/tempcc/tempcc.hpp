#pragma once

#include "tempcc/assignment.hpp"
#include "tempcc/controllability.hpp"
#include "tempcc/experiments.hpp"
#include "tempcc/field.hpp"
#include "tempcc/reachability.hpp"
#include "tempcc/synth.hpp"
#include "tempcc/temporal_network.hpp"
#include "tempcc/tog.hpp"
#include "tempcc/trees.hpp"
