#pragma once

#include "stegaug/analysis.hpp"
#include "stegaug/bitops.hpp"
#include "stegaug/colorops.hpp"
#include "stegaug/dataio.hpp"
#include "stegaug/error.hpp"
#include "stegaug/image.hpp"
#include "stegaug/pipeline.hpp"
#include "stegaug/report.hpp"
#include "stegaug/rng.hpp"
#include "stegaug/version.hpp"
