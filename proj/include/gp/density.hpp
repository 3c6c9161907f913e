#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gp/types.hpp"

namespace gp {

enum class BtbExpectation { Yes, No, Unknown };
const char* to_string(BtbExpectation e);

// Compactly supported, bounded, nonnegative density on [lo, hi].
class SpectralDensity {
 public:
  struct Parts {
    std::string name;
    nlohmann::json params;
    double lo = -1.0;
    double hi = 1.0;
    double bound = 1.25;
    double mass = 0.0;
    double sup = 0.0;
    std::function<double(double)> eval;
    std::function<cplx(cplx)> closed_form;
    BtbExpectation btb_expected = BtbExpectation::Unknown;
    std::vector<double> samples;
  };

  explicit SpectralDensity(Parts parts);

  const std::string& name() const { return parts_.name; }
  const nlohmann::json& params() const { return parts_.params; }
  double support_lo() const { return parts_.lo; }
  double support_hi() const { return parts_.hi; }
  // M with supp in (-M, M).
  double bound() const { return parts_.bound; }
  double mass() const { return parts_.mass; }
  double sup() const { return parts_.sup; }
  bool is_zero() const { return parts_.sup == 0.0; }
  BtbExpectation btb_expected() const { return parts_.btb_expected; }
  const std::vector<double>& samples() const { return parts_.samples; }

  // Zero outside [lo, hi].
  double operator()(double t) const;

  bool has_closed_form() const { return static_cast<bool>(parts_.closed_form); }
  // Closed-form Borel transform; throws if none is known.
  cplx closed_form_borel(cplx lambda) const;

 private:
  Parts parts_;
};

// name in {semicircle, indicator, cosine_bump, endpoint_power, table}.
SpectralDensity density_library(const std::string& name,
                                const nlohmann::json& params = nlohmann::json::object());

// Record {name, params, support, samples?}.
nlohmann::json density_to_json(const SpectralDensity& density);
SpectralDensity density_from_json(const nlohmann::json& record);

}  // namespace gp
