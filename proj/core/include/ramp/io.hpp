#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "ramp/amp.hpp"
#include "ramp/denoisers.hpp"
#include "ramp/matrix.hpp"

namespace ramp {

/// Parse failure with the offending byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset);
  std::size_t byte_offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// SYMF64 v1: text header "symf64 <n> <seed-or-dash>\n" followed by
/// n(n+1)/2 little-endian IEEE-754 doubles (upper triangle, row-major).
void write_symf64(const std::string& path, const SymmetricMatrix& m,
                  std::optional<std::uint64_t> seed = std::nullopt);
SymmetricMatrix read_symf64(const std::string& path);

/// Vector companion format: "vecf64 <n> <seed-or-dash>\n" + n LE doubles.
void write_vecf64(const std::string& path, const Vector& v,
                  std::optional<std::uint64_t> seed = std::nullopt);
Vector read_vecf64(const std::string& path);

/// Per-iteration trace summary: t, norm2, min, max, mean, frac_clipped.
std::string trace_to_csv(const AmpTrace& trace);

/// Schedule spec as carried in CLI config JSON:
/// {"type":"relu"|"identity"|"poly","coeffs":[...],"T":int}.
struct ScheduleSpec {
  std::string type = "relu";
  std::vector<double> coeffs;  // poly only
  int T = 0;                   // optional in config (0 = take from context)

  DenoiserSchedule build(int steps) const;
};

ScheduleSpec schedule_spec_from_json(const std::string& text);
std::string to_json(const ScheduleSpec& s);

}  // namespace ramp
