// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "lettericity/errors.hpp"
#include "lettericity/graph.hpp"
#include "lettericity/letter_graph.hpp"
#include "lettericity/word_retrieval.hpp"
#include "lettericity/two_sat.hpp"
#include "lettericity/decoder_retrieval.hpp"
#include "lettericity/coloring_retrieval.hpp"
#include "lettericity/symmetric.hpp"
#include "lettericity/oracle.hpp"
