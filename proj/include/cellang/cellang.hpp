#pragma once

#include "cellang/alphabet.hpp"
#include "cellang/automaton.hpp"
#include "cellang/algorithms.hpp"
#include "cellang/monoid.hpp"
#include "cellang/regex.hpp"
#include "cellang/automaton_io.hpp"
#include "cellang/decider.hpp"
#include "cellang/oracles.hpp"
#include "cellang/ca_language.hpp"
