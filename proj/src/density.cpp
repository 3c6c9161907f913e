#include "gp/density.hpp"

#include <algorithm>
#include <cmath>

namespace gp {

const char* to_string(BtbExpectation e) {
  switch (e) {
    case BtbExpectation::Yes: return "YES";
    case BtbExpectation::No: return "NO";
    default: return "UNKNOWN";
  }
}

SpectralDensity::SpectralDensity(Parts parts) : parts_(std::move(parts)) {}

double SpectralDensity::operator()(double t) const {
  if (t < parts_.lo || t > parts_.hi) return 0.0;
  return parts_.eval(t);
}

cplx SpectralDensity::closed_form_borel(cplx lambda) const {
  if (!parts_.closed_form) throw InvalidArgument("no closed-form Borel transform for " + name());
  return parts_.closed_form(lambda);
}

namespace {

double number(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const auto& v = params.at(key);
  if (!v.is_number()) throw InvalidArgument(std::string("density parameter '") + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidArgument(std::string("density parameter '") + key + "' is not finite");
  return x;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

double default_bound(double lo, double hi) {
  return 1.25 * std::max(std::abs(lo), std::abs(hi));
}

// Optional explicit M; the support must sit strictly inside (-M, M).
double resolve_bound(const nlohmann::json& params, double lo, double hi) {
  const double m = number(params, "bound", default_bound(lo, hi));
  require(m > 0.0, "density bound M must be positive");
  require(lo > -m && hi < m, "density support lies outside (-M, M)");
  return m;
}

SpectralDensity make_semicircle(const nlohmann::json& params) {
  const double c = number(params, "center", 0.0);
  const double r = number(params, "radius", 1.0);
  require(r > 0.0, "semicircle radius must be positive");
  SpectralDensity::Parts p;
  p.name = "semicircle";
  p.params = {{"center", c}, {"radius", r}};
  p.lo = c - r;
  p.hi = c + r;
  p.bound = resolve_bound(params, p.lo, p.hi);
  if (params.contains("bound")) p.params["bound"] = p.bound;
  p.mass = 1.0;
  p.sup = 2.0 / (kPi * r);
  p.eval = [c, r](double t) {
    const double u = t - c;
    const double s = r * r - u * u;
    return s > 0.0 ? 2.0 / (kPi * r * r) * std::sqrt(s) : 0.0;
  };
  // Product of principal roots: cut on [-r, r], ~ z at infinity.
  p.closed_form = [c, r](cplx lambda) {
    const cplx z = lambda - c;
    const cplx root = std::sqrt(z - r) * std::sqrt(z + r);
    return 2.0 / (r * r) * (-z + root);
  };
  p.btb_expected = BtbExpectation::Yes;
  return SpectralDensity(std::move(p));
}

SpectralDensity make_indicator(const nlohmann::json& params) {
  const double lo = number(params, "lo", -1.0);
  const double hi = number(params, "hi", 1.0);
  const double h = number(params, "height", 1.0);
  require(lo < hi, "indicator needs lo < hi");
  require(h >= 0.0, "indicator height must be nonnegative");
  SpectralDensity::Parts p;
  p.name = "indicator";
  p.params = {{"lo", lo}, {"hi", hi}, {"height", h}};
  p.lo = lo;
  p.hi = hi;
  p.bound = resolve_bound(params, lo, hi);
  if (params.contains("bound")) p.params["bound"] = p.bound;
  p.mass = h * (hi - lo);
  p.sup = h;
  // Mean of the one-sided limits at the jumps.
  p.eval = [lo, hi, h](double t) { return (t == lo || t == hi) ? 0.5 * h : h; };
  p.closed_form = [lo, hi, h](cplx lambda) { return h * std::log((hi - lambda) / (lo - lambda)); };
  p.btb_expected = h == 0.0 ? BtbExpectation::Yes : BtbExpectation::No;
  return SpectralDensity(std::move(p));
}

SpectralDensity make_cosine_bump(const nlohmann::json& params) {
  const double c = number(params, "center", 0.0);
  const double w = number(params, "half_width", 1.0);
  require(w > 0.0, "cosine_bump half_width must be positive");
  SpectralDensity::Parts p;
  p.name = "cosine_bump";
  p.params = {{"center", c}, {"half_width", w}};
  p.lo = c - w;
  p.hi = c + w;
  p.bound = resolve_bound(params, p.lo, p.hi);
  if (params.contains("bound")) p.params["bound"] = p.bound;
  p.mass = 1.0;
  p.sup = 1.0 / w;
  p.eval = [c, w](double t) {
    const double v = std::cos(kPi * (t - c) / (2.0 * w));
    return v * v / w;
  };
  p.btb_expected = BtbExpectation::Yes;
  return SpectralDensity(std::move(p));
}

// Holder exponent at or above which the Cauchy transform stays bounded
// up to the boundary with a clearly saturating sup.
constexpr double kHolderThreshold = 0.5;

SpectralDensity make_endpoint_power(const nlohmann::json& params) {
  const double alpha = number(params, "exponent", 1.0);
  const double c = number(params, "center", 0.0);
  const double w = number(params, "half_width", 1.0);
  require(alpha >= 0.0, "endpoint_power exponent must be nonnegative");
  require(w > 0.0, "endpoint_power half_width must be positive");
  SpectralDensity::Parts p;
  p.name = "endpoint_power";
  p.params = {{"exponent", alpha}, {"center", c}, {"half_width", w}};
  p.lo = c - w;
  p.hi = c + w;
  p.bound = resolve_bound(params, p.lo, p.hi);
  if (params.contains("bound")) p.params["bound"] = p.bound;
  const double integral = w * std::sqrt(kPi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
  const double scale = 1.0 / integral;
  p.mass = 1.0;
  p.sup = scale;
  p.eval = [alpha, c, w, scale](double t) {
    const double u = (t - c) / w;
    const double s = 1.0 - u * u;
    if (s <= 0.0) return alpha == 0.0 ? 0.5 * scale : 0.0;
    return scale * std::pow(s, alpha);
  };
  if (alpha == 0.0) {
    p.btb_expected = BtbExpectation::No;
  } else if (alpha >= kHolderThreshold) {
    p.btb_expected = BtbExpectation::Yes;
  } else {
    p.btb_expected = BtbExpectation::Unknown;
  }
  return SpectralDensity(std::move(p));
}

SpectralDensity make_table(const nlohmann::json& params) {
  const double lo = number(params, "lo", -1.0);
  const double hi = number(params, "hi", 1.0);
  require(lo < hi, "table needs lo < hi");
  require(params.contains("samples") && params.at("samples").is_array(),
          "table density needs a 'samples' array");
  std::vector<double> samples;
  for (const auto& v : params.at("samples")) {
    require(v.is_number(), "table samples must be numbers");
    const double x = v.get<double>();
    require(std::isfinite(x) && x >= 0.0, "table samples must be finite and nonnegative");
    samples.push_back(x);
  }
  require(samples.size() >= 2, "table density needs at least two samples");
  SpectralDensity::Parts p;
  p.name = "table";
  p.params = {{"lo", lo}, {"hi", hi}};
  p.lo = lo;
  p.hi = hi;
  p.bound = resolve_bound(params, lo, hi);
  if (params.contains("bound")) p.params["bound"] = p.bound;
  const double h = (hi - lo) / static_cast<double>(samples.size() - 1);
  double mass = 0.0;
  for (std::size_t k = 0; k + 1 < samples.size(); ++k) mass += 0.5 * h * (samples[k] + samples[k + 1]);
  p.mass = mass;
  p.sup = *std::max_element(samples.begin(), samples.end());
  p.samples = samples;
  p.eval = [lo, h, samples](double t) {
    const double x = (t - lo) / h;
    const auto last = samples.size() - 1;
    auto k = static_cast<std::size_t>(std::floor(x));
    if (k >= last) return samples[last];
    const double s = x - static_cast<double>(k);
    return (1.0 - s) * samples[k] + s * samples[k + 1];
  };
  // Piecewise linear is Lipschitz; only jumps at the ends break boundedness.
  const bool continuous = samples.front() == 0.0 && samples.back() == 0.0;
  p.btb_expected = continuous ? BtbExpectation::Yes : BtbExpectation::No;
  return SpectralDensity(std::move(p));
}

}  // namespace

SpectralDensity density_library(const std::string& name, const nlohmann::json& params) {
  const nlohmann::json& prm = params.is_null() ? nlohmann::json::object() : params;
  require(prm.is_object(), "density params must be a JSON object");
  if (name == "semicircle") return make_semicircle(prm);
  if (name == "indicator") return make_indicator(prm);
  if (name == "cosine_bump") return make_cosine_bump(prm);
  if (name == "endpoint_power") return make_endpoint_power(prm);
  if (name == "table") return make_table(prm);
  throw InvalidArgument("unknown density '" + name + "'");
}

nlohmann::json density_to_json(const SpectralDensity& density) {
  nlohmann::json record;
  record["name"] = density.name();
  record["params"] = density.params();
  record["support"] = {density.support_lo(), density.support_hi()};
  if (!density.samples().empty()) record["samples"] = density.samples();
  return record;
}

SpectralDensity density_from_json(const nlohmann::json& record) {
  require(record.is_object(), "density record must be a JSON object");
  require(record.contains("name") && record.at("name").is_string(), "density record needs a string 'name'");
  nlohmann::json params = record.value("params", nlohmann::json::object());
  require(params.is_object(), "density 'params' must be an object");
  if (record.contains("samples")) params["samples"] = record.at("samples");
  const std::string name = record.at("name").get<std::string>();
  if (name == "table" && record.contains("support") && !params.contains("lo")) {
    const auto& s = record.at("support");
    require(s.is_array() && s.size() == 2, "density 'support' must be [lo, hi]");
    params["lo"] = s.at(0);
    params["hi"] = s.at(1);
  }
  SpectralDensity density = density_library(name, params);
  if (record.contains("support")) {
    const auto& s = record.at("support");
    require(s.is_array() && s.size() == 2 && s.at(0).is_number() && s.at(1).is_number(),
            "density 'support' must be [lo, hi]");
    const double lo = s.at(0).get<double>();
    const double hi = s.at(1).get<double>();
    require(std::abs(lo - density.support_lo()) <= 1e-12 * (1.0 + std::abs(lo)) &&
                std::abs(hi - density.support_hi()) <= 1e-12 * (1.0 + std::abs(hi)),
            "density 'support' disagrees with its parameters");
  }
  return density;
}

}  // namespace gp
