#pragma once

#include <string>

#include "rcsbench/result.hpp"

namespace rcs {

// Fixed column layout shared by every sweep product:
//   freq_hz,theta_deg,phi_deg,pol,sigma_dbsm,field_re,field_im
// Values are written with %.17g so a write/read cycle is lossless.
extern const char* const kCsvHeader;

void write_csv(const std::string& path, const RcsResult& result);

// Round-trip reader for the schema above. Throws std::runtime_error with the
// offending line number on any malformed row or header mismatch.
RcsResult read_csv(const std::string& path);

} // namespace rcs
