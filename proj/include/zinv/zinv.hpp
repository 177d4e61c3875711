#pragma once

#include "zinv/closedform.hpp"
#include "zinv/corpus.hpp"
#include "zinv/error.hpp"
#include "zinv/factorize.hpp"
#include "zinv/format.hpp"
#include "zinv/identities.hpp"
#include "zinv/oracles.hpp"
#include "zinv/parser.hpp"
#include "zinv/pfe.hpp"
#include "zinv/polycore.hpp"
#include "zinv/rational.hpp"
#include "zinv/sequence.hpp"
