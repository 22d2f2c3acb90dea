#pragma once

#include <json.hpp>

#include "lavatube/aerostat.hpp"
#include "lavatube/energy.hpp"
#include "lavatube/explorer.hpp"
#include "lavatube/findings.hpp"
#include "lavatube/mission.hpp"
#include "lavatube/program.hpp"
#include "lavatube/scenario.hpp"
#include "lavatube/thermal.hpp"

namespace lavatube::detail {

using json = nlohmann::json;

json echo_config(const MissionConfig& cfg);
json echo_env(const MarsEnvironment& env);
json echo_wbs(const program::WbsNode& node);
json echo_cell(explore::CellPos p);

json to_json(const Finding& f);
json to_json(const aerostat::BuoyancyResult& r);
json to_json(const energy::WinchPower& w);
json to_json(const energy::Violation& v);
json to_json(const energy::EnergyTotals& t);
json to_json(const energy::Schedule& s);
/// Summary of a trace; the per-step samples go to CSV instead.
json to_json(const energy::SocTrace& t);
json to_json(const thermal::EnvelopeCheck& c);
json to_json(const explore::ExplorationReport& r);
json to_json(const program::BudgetRollup& b);
json to_json(const program::ScheduleCheck& s);
json to_json(const mission::GerminationTrial& g);
json to_json(const mission::MissionReport& r);
/// WBS tree with every node's rolled-up subtotal.
json cost_tree(const program::WbsNode& node);

std::string soc_trace_csv(const energy::SocTrace& t);

} // namespace lavatube::detail
