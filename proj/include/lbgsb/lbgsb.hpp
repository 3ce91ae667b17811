#pragma once

#include "scalars.hpp"
#include "terms.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "free_nonassoc.hpp"
#include "leibniz.hpp"
#include "gsb.hpp"
#include "presets.hpp"
#include "extensions.hpp"
#include "io.hpp"
