#pragma once

#include "cubevol/bigint.hpp"
#include "cubevol/errors.hpp"
#include "cubevol/function.hpp"
#include "cubevol/instance.hpp"
#include "cubevol/intercept.hpp"
#include "cubevol/io.hpp"
#include "cubevol/multi.hpp"
#include "cubevol/oracles.hpp"
#include "cubevol/rational.hpp"
#include "cubevol/robp.hpp"
#include "cubevol/table.hpp"
#include "cubevol/volume.hpp"
