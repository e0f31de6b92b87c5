#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holab/carleson.hpp"
#include "holab/criteria.hpp"
#include "holab/orlicz.hpp"
#include "holab/symbols.hpp"

namespace holab {

// Orlicz mini-grammar: power:3, exp_power:2, exp_log_power:2, exp_x, loglog,
// logloglog, product, critere:8, piecewise:@file.csv
OrliczFunction parse_orlicz_spec(const std::string& spec);

// Symbol mini-grammar: identity, const:0.5+0.1i, lens[:eps], phi-theta:2[:eps],
// general:@profile.csv (h,c rows), outer:@modulus.csv (needs psi)
Symbol parse_symbol_spec(const std::string& spec, const OrliczFunction* psi = nullptr);

// Condition mini-grammar: delta2, delta-sup2[:A], delta-sup1[:A], nabla0,
// slow-growth[:eps], theta[:A[:theta]]
ConditionSpec parse_condition_spec(const std::string& spec);

std::vector<std::pair<double, double>> read_csv_pairs(const std::string& path);
std::vector<double> read_csv_column(const std::string& path);

// CSV emission with fixed %.17g formatting so identical inputs give identical
// bytes.
std::string profile_csv(const CarlesonProfile& p);
std::string dyadic_csv(const DyadicMeasure& dm);

// verdict records: {criterion, params, holds, evidence: [[h, ratio], ...]}
std::string verdict_json(const Verdict& v);
std::string growth_verdict_json(const GrowthVerdict& v);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace holab
