#pragma once

#include "i3/catalog.hpp"
#include "i3/dynamics.hpp"
#include "i3/generator.hpp"
#include "i3/ledger.hpp"
#include "i3/metric.hpp"
#include "i3/ranking.hpp"
#include "i3/report_io.hpp"
