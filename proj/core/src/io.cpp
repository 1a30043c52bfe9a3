#include "ramp/io.hpp"

#include <bit>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace ramp {

ParseError::ParseError(const std::string& what, std::size_t byte_offset)
    : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
      offset_(byte_offset) {}

namespace {

void put_le(std::string& out, double d) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(d);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
}

double get_le(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("short write to " + path);
}

/// Parses "<magic> <n> <seed-or-dash>\n"; returns (n, payload offset).
std::pair<long long, std::size_t> parse_header(const std::string& data, const char* magic,
                                               const std::string& path) {
  std::size_t nl = data.find('\n');
  if (nl == std::string::npos) throw ParseError(path + ": missing header newline", data.size());
  std::string header = data.substr(0, nl);
  char mag[16];
  long long n = 0;
  char seedtok[32];
  if (std::sscanf(header.c_str(), "%15s %lld %31s", mag, &n, seedtok) != 3)
    throw ParseError(path + ": malformed header", 0);
  if (std::string(mag) != magic) throw ParseError(path + ": bad magic '" + mag + "'", 0);
  if (n < 1) throw ParseError(path + ": dimension must be >= 1", 0);
  return {n, nl + 1};
}

}  // namespace

void write_symf64(const std::string& path, const SymmetricMatrix& m,
                  std::optional<std::uint64_t> seed) {
  const int n = m.size();
  std::string out;
  char header[64];
  if (seed)
    std::snprintf(header, sizeof(header), "symf64 %d %" PRIu64 "\n", n, *seed);
  else
    std::snprintf(header, sizeof(header), "symf64 %d -\n", n);
  out = header;
  out.reserve(out.size() + static_cast<std::size_t>(n) * (n + 1) / 2 * 8);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) put_le(out, m(i, j));
  write_file(path, out);
}

SymmetricMatrix read_symf64(const std::string& path) {
  std::string data = read_file(path);
  auto [n, off] = parse_header(data, "symf64", path);
  const std::size_t count = static_cast<std::size_t>(n) * (n + 1) / 2;
  if (data.size() - off < count * 8)
    throw ParseError(path + ": truncated payload", data.size());
  std::vector<double> upper(count);
  const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data()) + off;
  for (std::size_t k = 0; k < count; ++k) upper[k] = get_le(p + 8 * k);
  return SymmetricMatrix::from_upper(static_cast<int>(n), upper);
}

void write_vecf64(const std::string& path, const Vector& v, std::optional<std::uint64_t> seed) {
  const int n = static_cast<int>(v.size());
  char header[64];
  if (seed)
    std::snprintf(header, sizeof(header), "vecf64 %d %" PRIu64 "\n", n, *seed);
  else
    std::snprintf(header, sizeof(header), "vecf64 %d -\n", n);
  std::string out = header;
  for (int i = 0; i < n; ++i) put_le(out, v(i));
  write_file(path, out);
}

Vector read_vecf64(const std::string& path) {
  std::string data = read_file(path);
  auto [n, off] = parse_header(data, "vecf64", path);
  if (data.size() - off < static_cast<std::size_t>(n) * 8)
    throw ParseError(path + ": truncated payload", data.size());
  Vector v(n);
  const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data()) + off;
  for (long long i = 0; i < n; ++i) v(i) = get_le(p + 8 * i);
  return v;
}

std::string trace_to_csv(const AmpTrace& trace) {
  std::string out = "t,norm2,min,max,mean,frac_clipped\n";
  char line[160];
  const double cutoff = trace.clip_cfg ? trace.clip_cfg->cutoff : 0.0;
  for (int t = 0; t < static_cast<int>(trace.iterates.size()); ++t) {
    const Vector& x = trace.iterates[static_cast<std::size_t>(t)];
    double frac = 0.0;
    if (trace.clipped && t >= 1 && std::isfinite(cutoff)) {
      int c = 0;
      for (int i = 0; i < x.size(); ++i)
        if (std::abs(x(i)) >= cutoff) ++c;
      frac = static_cast<double>(c) / static_cast<double>(x.size());
    }
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", t, x.norm(),
                  x.minCoeff(), x.maxCoeff(), x.mean(), frac);
    out += line;
  }
  return out;
}

DenoiserSchedule ScheduleSpec::build(int steps) const {
  if (steps < 0) throw std::invalid_argument("ScheduleSpec: steps must be >= 0");
  if (type == "relu") return DenoiserSchedule::uniform(relu_denoiser(), steps);
  if (type == "identity") return DenoiserSchedule::uniform(identity_denoiser(), steps);
  if (type == "poly") return DenoiserSchedule::uniform(poly_denoiser(coeffs), steps);
  throw std::invalid_argument("ScheduleSpec: unknown type '" + type + "'");
}

ScheduleSpec schedule_spec_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ScheduleSpec s;
  s.type = j.at("type").get<std::string>();
  if (j.contains("coeffs")) s.coeffs = j["coeffs"].get<std::vector<double>>();
  if (j.contains("T")) s.T = j["T"].get<int>();
  if (s.type != "relu" && s.type != "identity" && s.type != "poly")
    throw std::invalid_argument("schedule spec: unknown type '" + s.type + "'");
  if (s.type == "poly" && s.coeffs.empty())
    throw std::invalid_argument("schedule spec: poly requires coeffs");
  return s;
}

std::string to_json(const ScheduleSpec& s) {
  nlohmann::json j;
  j["type"] = s.type;
  if (!s.coeffs.empty()) j["coeffs"] = s.coeffs;
  if (s.T > 0) j["T"] = s.T;
  return j.dump();
}

}  // namespace ramp
