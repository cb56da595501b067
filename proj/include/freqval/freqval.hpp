#pragma once

#include "freqval/closed_form.hpp"
#include "freqval/discretized_game.hpp"
#include "freqval/game_core.hpp"
#include "freqval/game_io.hpp"
#include "freqval/game_spec.hpp"
#include "freqval/limit_estimator.hpp"
#include "freqval/matrix.hpp"
#include "freqval/matrix_game.hpp"
#include "freqval/recursion_oracle.hpp"
#include "freqval/verify.hpp"
