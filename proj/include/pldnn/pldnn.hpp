#pragma once

#include "circuit.hpp"
#include "dot.hpp"
#include "evaluate.hpp"
#include "expression.hpp"
#include "gates.hpp"
#include "network.hpp"
#include "rules.hpp"
#include "serialize.hpp"
