#include "spinkit/report.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "spinkit/error.hpp"

namespace spinkit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Ambiguous: return "ambiguous";
  }
  return "?";
}

void VerificationReport::fail(const std::string& witness) {
  verdict = Verdict::Fail;
  witnesses.push_back(witness);
}

void VerificationReport::ambiguous(const std::string& witness) {
  if (verdict == Verdict::Pass) verdict = Verdict::Ambiguous;
  ++ambiguity_count;
  witnesses.push_back(witness);
}

VerificationReport make_report(const std::string& check_id, int k,
                               const std::string& backend) {
  VerificationReport r;
  r.check_id = check_id;
  r.k = k;
  r.backend = backend;
  return r;
}

void detail_int(VerificationReport& r, const std::string& key, long long v) {
  r.details[key] = nlohmann::json(v).dump();
}

void detail_str(VerificationReport& r, const std::string& key, const std::string& v) {
  r.details[key] = nlohmann::json(v).dump();
}

void detail_ints(VerificationReport& r, const std::string& key,
                 const std::vector<long long>& v) {
  r.details[key] = nlohmann::json(v).dump();
}

void detail_bool(VerificationReport& r, const std::string& key, bool v) {
  r.details[key] = nlohmann::json(v).dump();
}

std::string canonical_json(const VerificationReport& r) {
  if (r.verdict == Verdict::Pass && (!r.witnesses.empty() || r.ambiguity_count != 0))
    throw Error(ErrKind::Internal,
                "pass verdict with witnesses or ambiguities in " + r.check_id);
  nlohmann::json j;
  j["check"] = r.check_id;
  j["k"] = r.k;
  j["backend"] = r.backend;
  j["verdict"] = to_string(r.verdict);
  j["ambiguity_count"] = r.ambiguity_count;
  j["params"] = r.params;
  auto det = nlohmann::json::object();
  for (const auto& [key, frag] : r.details) {
    try {
      det[key] = nlohmann::json::parse(frag);
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrKind::Internal, "detail '" + key + "' is not a json fragment");
    }
  }
  j["details"] = det;
  j["witnesses"] = r.witnesses;
  return j.dump(2) + "\n";
}

std::string report_emit(const VerificationReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::string body = canonical_json(r);
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrKind::IoError, "cannot create " + dir + ": " + ec.message());
  std::string name = r.check_id;
  if (r.k > 0) name += "_k" + std::to_string(r.k);
  p /= name + ".json";
  std::ofstream out(p);
  if (!out) throw Error(ErrKind::IoError, "cannot open " + p.string());
  out << body;
  out.close();
  if (!out) throw Error(ErrKind::IoError, "write failed for " + p.string());
  return p.string();
}

}  // namespace spinkit
