#pragma once

#include "liprg/error.hpp"
#include "liprg/lip.hpp"
#include "liprg/image.hpp"
#include "liprg/region.hpp"
#include "liprg/grower.hpp"
#include "liprg/synth.hpp"
#include "liprg/imgio.hpp"
