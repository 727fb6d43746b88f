#pragma once

#include "evosum/commands.hpp"
#include "evosum/corpus.hpp"
#include "evosum/error.hpp"
#include "evosum/ga.hpp"
#include "evosum/model_io.hpp"
#include "evosum/random.hpp"
#include "evosum/rouge.hpp"
#include "evosum/summarizer.hpp"
#include "evosum/tokenize.hpp"
#include "evosum/vocab.hpp"
