#pragma once

#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "engine.hpp"
#include "locus.hpp"
#include "newton.hpp"

namespace expsum {

// Fixed 12-significant-digit float formatting shared by the CSV and JSON
// emitters (reproducibility requires byte-stable output).
std::string format_double(double v);

nlohmann::json to_json(const ExpSumResult& r, const std::string& f_id = "");
nlohmann::json to_json(const NewtonData& nd);
nlohmann::json to_json(const LocusData& ld);
nlohmann::json to_json(const PoincareData& pd);
nlohmann::json to_json(const BoundVerdict& v);

std::string sums_csv_header();
std::string sums_csv_row(const std::string& f_id, const ExpSumResult& r);
std::string verdicts_csv_header();
std::string verdicts_csv_row(const BoundVerdict& v);

}  // namespace expsum
