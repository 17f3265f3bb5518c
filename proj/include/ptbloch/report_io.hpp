#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ptbloch/bands.hpp"
#include "ptbloch/enclosure.hpp"
#include "ptbloch/galerkin.hpp"
#include "ptbloch/verify.hpp"

namespace ptbloch::io {

/// 17 significant digits, scientific notation; the pinned CSV float format.
std::string format_float(double value);

std::string eigen_solution_csv(const galerkin::EigenSolution& sol,
                               const std::map<int, double>& trunc_err);
std::string band_csv(const bands::BandStructure& bs);
std::string homotopy_csv(const verify::HomotopyTrace& trace);

nlohmann::json enclosure_json(const enclosure::EnclosureReport& report);
nlohmann::json verification_json(const verify::VerificationReport& report);
nlohmann::json check_record_json(const verify::CheckRecord& record);
std::string verification_table(const verify::VerificationReport& report);

/// Two stacked panels: Re(lambda) versus t per band (nonreal arcs highlighted),
/// and the complex-plane scatter at one grid point with the enclosure regions
/// overlaid.
std::string bands_svg(const bands::BandStructure& bs,
                      const enclosure::EnclosureReport& report, int overlay_index);

/// Collects files for one command run; on failure every partial output is
/// removed.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path dir);
  void write(const std::string& name, const std::string& content);
  void discard();  // removes everything written so far

 private:
  std::filesystem::path dir_;
  std::vector<std::filesystem::path> written_;
};

}  // namespace ptbloch::io
