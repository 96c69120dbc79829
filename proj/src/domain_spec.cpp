#include "qdot/domain_spec.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qdot {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
  double v = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw std::invalid_argument("domain spec: bad number for '" + key + "': " + value);
  return v;
}

// Parses "cos12" -> 12; returns 0 if the key is not of the form <prefix><int>.
int harmonic_index(const std::string& key, std::string_view prefix) {
  if (key.size() <= prefix.size() || key.compare(0, prefix.size(), prefix) != 0) return 0;
  int k = 0;
  const char* first = key.data() + prefix.size();
  const char* last = key.data() + key.size();
  auto [ptr, ec] = std::from_chars(first, last, k);
  if (ec != std::errc() || ptr != last || k < 1) return 0;
  return k;
}

}  // namespace

BoundaryCurve DomainSpec::resolved() const {
  if (normalize_area) return qdot::normalize_area(curve, *normalize_area);
  return curve;
}

DomainSpec parse_domain_spec(std::string_view text) {
  std::map<std::string, std::string> kv;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("domain spec line " + std::to_string(lineno) +
                                  ": expected 'key = value'");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("domain spec line " + std::to_string(lineno) +
                                  ": empty key or value");
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("domain spec: duplicate key '" + key + "'");
  }

  auto kind_it = kv.find("kind");
  if (kind_it == kv.end()) throw std::invalid_argument("domain spec: missing 'kind'");
  const std::string kind = kind_it->second;

  DomainSpec spec;
  std::vector<std::string> allowed{"kind", "normalize_area"};
  auto need = [&](const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw std::invalid_argument("domain spec: missing '" + key + "'");
    return to_double(key, it->second);
  };

  if (kind == "disk") {
    allowed.push_back("radius");
    spec.curve = BoundaryCurve::disk(need("radius"));
  } else if (kind == "ellipse") {
    allowed.insert(allowed.end(), {"semi_major", "semi_minor"});
    spec.curve = BoundaryCurve::ellipse(need("semi_major"), need("semi_minor"));
  } else if (kind == "radial-fourier") {
    allowed.push_back("c0");
    std::vector<double> cs, ss;
    for (const auto& [key, value] : kv) {
      if (int k = harmonic_index(key, "cos"); k > 0) {
        if (static_cast<int>(cs.size()) < k) cs.resize(k, 0.0);
        cs[k - 1] = to_double(key, value);
        allowed.push_back(key);
      } else if (int k2 = harmonic_index(key, "sin"); k2 > 0) {
        if (static_cast<int>(ss.size()) < k2) ss.resize(k2, 0.0);
        ss[k2 - 1] = to_double(key, value);
        allowed.push_back(key);
      }
    }
    spec.curve = BoundaryCurve::radial_fourier(need("c0"), cs, ss);
  } else {
    throw std::invalid_argument("domain spec: unknown kind '" + kind + "'");
  }

  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == key;
    if (!ok) throw std::invalid_argument("domain spec: unknown key '" + key + "'");
  }
  if (auto it = kv.find("normalize_area"); it != kv.end()) {
    spec.normalize_area = to_double("normalize_area", it->second);
    if (!(*spec.normalize_area > 0.0))
      throw std::invalid_argument("domain spec: normalize_area must be positive");
  }
  // Validate the radial function on a fine grid up front.
  (void)build_grid(spec.curve, 256);
  return spec;
}

DomainSpec load_domain_spec(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open domain spec: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_domain_spec(ss.str());
}

std::string format_domain_spec(const DomainSpec& spec) {
  std::ostringstream out;
  out << std::setprecision(17);
  const auto& c = spec.curve;
  switch (c.kind()) {
    case CurveKind::disk:
      out << "kind = disk\nradius = " << c.radius() << '\n';
      break;
    case CurveKind::ellipse:
      out << "kind = ellipse\nsemi_major = " << c.semi_major()
          << "\nsemi_minor = " << c.semi_minor() << '\n';
      break;
    case CurveKind::radial_fourier:
      out << "kind = radial-fourier\nc0 = " << c.c0() << '\n';
      for (std::size_t k = 0; k < c.cos_coeffs().size(); ++k) {
        if (c.cos_coeffs()[k] != 0.0) out << "cos" << k + 1 << " = " << c.cos_coeffs()[k] << '\n';
        if (c.sin_coeffs()[k] != 0.0) out << "sin" << k + 1 << " = " << c.sin_coeffs()[k] << '\n';
      }
      break;
  }
  if (spec.normalize_area) out << "normalize_area = " << *spec.normalize_area << '\n';
  return out.str();
}

}  // namespace qdot
