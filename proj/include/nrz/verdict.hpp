#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace nrz {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "nrz-verdict/1";

enum class Status { Realizable, NotRealizable, Unknown };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::Realizable: return "realizable";
    case Status::NotRealizable: return "not_realizable";
    default: return "unknown";
  }
}

struct Witness {
  std::string rule;  // stable rule identifier, e.g. "diag.odd_n"
  json data = json::object();
};

/// Outcome of a decision procedure: realizable with a certificate, refuted by
/// witnesses, or undecided.
struct Verdict {
  Status status = Status::Unknown;
  std::vector<Witness> witnesses;
  json certificate;  // null unless Realizable
  std::vector<std::string> notes;

  static Verdict realizable(json cert, std::string rule = {}) {
    Verdict v;
    v.status = Status::Realizable;
    v.certificate = std::move(cert);
    if (!rule.empty()) v.witnesses.push_back({std::move(rule), json::object()});
    return v;
  }
  static Verdict not_realizable(std::vector<Witness> w) {
    Verdict v;
    v.status = Status::NotRealizable;
    v.witnesses = std::move(w);
    return v;
  }
  static Verdict unknown(std::string note = {}) {
    Verdict v;
    if (!note.empty()) v.notes.push_back(std::move(note));
    return v;
  }

  bool is_consistent() const {
    if (status == Status::Realizable) return !certificate.is_null();
    if (status == Status::NotRealizable) return !witnesses.empty() && certificate.is_null();
    return certificate.is_null();
  }

  json to_json(json input = nullptr) const {
    json w = json::array();
    for (const auto& x : witnesses) w.push_back({{"rule", x.rule}, {"data", x.data}});
    json out = {{"schema", kSchemaVersion},
                {"input", std::move(input)},
                {"status", status_name(status)},
                {"witnesses", w},
                {"certificate", certificate}};
    if (!notes.empty()) out["notes"] = notes;
    return out;
  }
};

}  // namespace nrz
