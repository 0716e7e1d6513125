#pragma once

#include <string>

#include "metachain/verify.hpp"

namespace metachain {

std::string hierarchy_report_json(const Hierarchy& h);
std::string hierarchy_report_text(const Hierarchy& h);

std::string metastable_report_json(const Hierarchy& h,
                                   const MetastableDistribution& md);
std::string metastable_report_text(const Hierarchy& h,
                                   const MetastableDistribution& md);

std::string comparison_report_json(const Hierarchy& h, const ComparisonReport& rep);
std::string comparison_report_text(const Hierarchy& h, const ComparisonReport& rep);
std::string comparison_report_csv(const Hierarchy& h, const ComparisonReport& rep);

} // namespace metachain
