#pragma once

#include "gjsoq/approx.hpp"
#include "gjsoq/censored.hpp"
#include "gjsoq/errors.hpp"
#include "gjsoq/io.hpp"
#include "gjsoq/model.hpp"
#include "gjsoq/oracle.hpp"
#include "gjsoq/reference.hpp"
#include "gjsoq/simulator.hpp"
#include "gjsoq/stability.hpp"
#include "gjsoq/tail.hpp"
#include "gjsoq/version.hpp"
