#pragma once

// Structured results for verification checks.  Reports are data, not
// exceptions: a failed identity is a Fail verdict with witnesses, an
// undecidable zero test is Ambiguous.  Canonical JSON serialization is
// byte-deterministic (keys sorted, timing excluded) so repeated runs of the
// same check produce identical files.

#include <map>
#include <string>
#include <vector>

namespace spinkit {

enum class Verdict { Pass, Fail, Ambiguous };
const char* to_string(Verdict v);

struct VerificationReport {
  std::string check_id;
  int k = 0;             // Hadamard order of the instance under test (0 = n/a)
  std::string backend;   // scalar backend name, "" for integer-only checks
  std::map<std::string, std::string> params;
  // values are JSON fragments (use the detail_* helpers)
  std::map<std::string, std::string> details;
  std::vector<std::string> witnesses;
  int ambiguity_count = 0;
  double elapsed_ms = 0.0;  // informational; excluded from canonical form
  Verdict verdict = Verdict::Pass;

  bool ok() const { return verdict == Verdict::Pass; }

  // Fail dominates Ambiguous dominates Pass.
  void fail(const std::string& witness);
  void ambiguous(const std::string& witness);
};

VerificationReport make_report(const std::string& check_id, int k = 0,
                               const std::string& backend = "");

void detail_int(VerificationReport& r, const std::string& key, long long v);
void detail_str(VerificationReport& r, const std::string& key, const std::string& v);
void detail_ints(VerificationReport& r, const std::string& key,
                 const std::vector<long long>& v);
void detail_bool(VerificationReport& r, const std::string& key, bool v);

// Deterministic bytes; enforces "Pass implies no witnesses and no
// ambiguity" before serializing.
std::string canonical_json(const VerificationReport& r);

// Writes <dir>/<check_id>[_k<k>].json (directories created as needed) and
// returns the path.
std::string report_emit(const VerificationReport& r, const std::string& dir);

}  // namespace spinkit
