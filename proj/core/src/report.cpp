#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "rsalg/suites.hpp"

namespace rsalg {

bool SuiteReport::passed() const {
  for (const auto& r : identities)
    if (!r.passed()) return false;
  return true;
}

const IdentityResult* SuiteReport::find(std::string_view id) const {
  for (const auto& r : identities)
    if (r.id == id) return &r;
  return nullptr;
}

std::string SuiteReport::to_json() const {
  using json = nlohmann::ordered_json;
  json doc;
  doc["suite"] = suite;
  json s = json::object();
  for (const auto& [k, v] : settings) s[k] = v;
  doc["settings"] = s;
  json c = json::object();
  for (const auto& [k, v] : counts) c[k] = v;
  doc["counts"] = c;
  json ids = json::array();
  for (const auto& r : identities) {
    json j;
    j["id"] = r.id;
    j["description"] = r.description;
    j["status"] = r.diagnostic ? "info" : (r.failed == 0 ? "pass" : "fail");
    j["checked"] = r.checked;
    j["failed"] = r.failed;
    if (!r.exact) {
      j["max_abs_error"] = r.max_abs;
      j["max_rel_error"] = r.max_rel;
      if (!r.worst.empty()) j["worst_case"] = r.worst;
    }
    if (!r.note.empty()) j["note"] = r.note;
    json f = json::array();
    for (const auto& x : r.failures) {
      json e;
      e["tree"] = x.tree;
      if (!x.context.empty()) e["context"] = x.context;
      e["lhs"] = x.lhs;
      e["rhs"] = x.rhs;
      f.push_back(std::move(e));
    }
    if (!f.empty()) j["failures"] = std::move(f);
    ids.push_back(std::move(j));
  }
  doc["identities"] = std::move(ids);
  if (!notes.empty()) doc["notes"] = notes;
  doc["passed"] = passed();
  return doc.dump(2) + "\n";
}

std::string SuiteReport::summary() const {
  std::ostringstream out;
  out << suite << " suite";
  for (const auto& [k, v] : counts) out << "  " << k << "=" << v;
  out << '\n';
  std::size_t width = 0;
  for (const auto& r : identities) width = std::max(width, r.id.size());
  for (const auto& r : identities) {
    const char* status = r.diagnostic ? "info" : (r.failed == 0 ? "pass" : "FAIL");
    out << "  " << std::left << std::setw(static_cast<int>(width)) << r.id << "  " << std::setw(4) << status
        << "  " << r.checked - r.failed << "/" << r.checked;
    if (!r.exact && r.checked > 0) {
      out << std::scientific << std::setprecision(2) << "  max abs " << r.max_abs << "  max rel " << r.max_rel;
      out << std::defaultfloat;
    }
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
  }
  for (const auto& n : notes) out << "  note: " << n << '\n';
  out << (passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

}  // namespace rsalg
