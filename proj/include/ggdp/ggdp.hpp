#pragma once

#include "ggdp/accounting.hpp"
#include "ggdp/error.hpp"
#include "ggdp/fetch.hpp"
#include "ggdp/gm11.hpp"
#include "ggdp/grey_relational.hpp"
#include "ggdp/json_io.hpp"
#include "ggdp/panel.hpp"
#include "ggdp/panel_csv.hpp"
#include "ggdp/panel_json.hpp"
#include "ggdp/pipeline.hpp"
#include "ggdp/report.hpp"
#include "ggdp/schema_check.hpp"
#include "ggdp/stats_fit.hpp"
#include "ggdp/svg.hpp"
