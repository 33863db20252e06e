#pragma once

#include "powerdex/rational.hpp"
#include "powerdex/combinatorics.hpp"
#include "powerdex/games.hpp"
#include "powerdex/discretization.hpp"
#include "powerdex/step_game.hpp"
#include "powerdex/power_vector.hpp"
#include "powerdex/evaluable_game.hpp"
#include "powerdex/indices.hpp"
#include "powerdex/monte_carlo.hpp"
#include "powerdex/embeddings.hpp"
#include "powerdex/his.hpp"
#include "powerdex/appendix.hpp"
#include "powerdex/axioms.hpp"
#include "powerdex/random_games.hpp"
#include "powerdex/io.hpp"
