#pragma once

#include "hocomb/arrow_set.hpp"
#include "hocomb/enumerate.hpp"
#include "hocomb/export.hpp"
#include "hocomb/io.hpp"
#include "hocomb/lattice.hpp"
#include "hocomb/localize.hpp"
#include "hocomb/model.hpp"
#include "hocomb/paths.hpp"
#include "hocomb/transfer.hpp"
