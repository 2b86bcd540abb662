#pragma once

// Umbrella header: revision detection toolkit.

#include "revdet/calibration.hpp"
#include "revdet/corpus.hpp"
#include "revdet/csv.hpp"
#include "revdet/document.hpp"
#include "revdet/dtw.hpp"
#include "revdet/embeddings.hpp"
#include "revdet/errors.hpp"
#include "revdet/evaluation.hpp"
#include "revdet/network.hpp"
#include "revdet/para_matrix.hpp"
#include "revdet/parallel.hpp"
#include "revdet/pipeline.hpp"
#include "revdet/rng.hpp"
#include "revdet/simulator.hpp"
#include "revdet/ted.hpp"
#include "revdet/tfidf.hpp"
#include "revdet/tokenize.hpp"
