#pragma once

// Command implementations behind the oscq executable.  main.cpp only parses flags.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscq/bigfloat.hpp"

namespace oscq::cli {

enum ExitCode : int {
  kOk = 0,
  kInvariantFailed = 1,
  kSolverFailure = 2,
  kIndeterminate = 3,
  kDomain = 4,
};

inline constexpr long kDeskCeiling = 64;
/// nu feeds the moment solver at this precision; the library rounds it down per working precision.
inline constexpr prec_t kNuPrec = 8192;

/// "1..10", "16,32,64", "2,4..8" -> sorted unique list.
std::vector<long> parse_n_list(const std::string& s);

/// nu as given on the command line, kept as text so it can be read at any precision.
struct NuArg {
  std::string text;
  BigReal at(prec_t prec) const { return BigReal(text, prec); }
  double value() const;
};
/// Throws DomainError unless 0 <= nu < 1.
NuArg parse_nu(const std::string& s);

/// Writes content to a temp file next to path, then renames it over path.
void write_atomic(const std::string& path, const std::string& content);

/// Full-precision decimal for CSV: ceil(prec log10 2) + 2 digits.
std::string csv_number(const BigReal& x, prec_t prec);

struct ZerosArgs {
  NuArg nu;
  long n = 0;
  std::optional<prec_t> prec;  // empty = auto
  std::string out;
  double delta = 0.2;
  bool allow_long = false;
  std::string command_line;
};
/// Writes out (CSV) and out + ".manifest.json".
int cmd_zeros(const ZerosArgs& a, std::ostream& log);

struct VerifyArgs {
  std::string suite;
  NuArg nu;
  std::vector<long> n_list;  // empty = suite default
  prec_t prec = 0;           // 0 = suite default
  std::string report;        // empty = stdout
  bool allow_long = false;
  std::string command_line;
};
int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& log);

struct AsymptoticsArgs {
  NuArg nu;
  long n = 0;
  std::string points;  // file path, or grid:RE0,IM0,RE1,IM1,COUNT
  std::string regime;  // outer | inner
  std::string out;     // empty = stdout
  prec_t prec = 128;
  double delta = 0.2;     // inner: distance from 0 and +-1
  double min_dist = 0.2;  // outer: distance from [-1,1]
  bool allow_long = false;
  std::string command_line;
};
int cmd_asymptotics(const AsymptoticsArgs& a, std::ostream& out, std::ostream& log);

/// Points from a file (one "re,im" or "re im" per line, # comments) or a grid spec.
std::vector<BigComplex> read_points(const std::string& spec, prec_t prec);

// verify suites; each returns the report object with a "checks" array
struct Check {
  std::string name;
  std::optional<long> n;
  double measured = 0;
  double threshold = 0;
  bool pass = false;
};
nlohmann::json check_to_json(const Check& c);

std::vector<Check> suite_equilibrium(prec_t prec);
std::vector<Check> suite_parametrix(const NuArg& nu, const std::vector<long>& ns, prec_t prec);
std::vector<Check> suite_smallnorm(const NuArg& nu, const std::vector<long>& ns, prec_t prec);
std::vector<Check> suite_quadrature(const NuArg& nu, const std::vector<long>& ns, prec_t prec);
std::vector<Check> suite_zeros(const NuArg& nu, const std::vector<long>& ns, prec_t prec);

}  // namespace oscq::cli
