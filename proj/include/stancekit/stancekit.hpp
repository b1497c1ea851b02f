#pragma once

#include "corpus_io.hpp"
#include "error.hpp"
#include "eval.hpp"
#include "experiment.hpp"
#include "feature_vector.hpp"
#include "features.hpp"
#include "harvest.hpp"
#include "lexicons.hpp"
#include "naive_bayes.hpp"
#include "normalize.hpp"
#include "parallel.hpp"
#include "pmi.hpp"
#include "random.hpp"
#include "selection.hpp"
#include "stemmer.hpp"
#include "text.hpp"
#include "types.hpp"
