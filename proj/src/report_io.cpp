#include "ptbloch/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ptbloch/errors.hpp"

namespace ptbloch::io {

using nlohmann::json;

std::string format_float(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.16e", value);
  return buffer;
}

std::string eigen_solution_csv(const galerkin::EigenSolution& sol,
                               const std::map<int, double>& trunc_err) {
  std::ostringstream os;
  os << "re_lambda,im_lambda,k_label,trusted,trunc_err\n";
  for (const auto& pair : sol.pairs) {
    const bool trusted = sol.trusted(pair);
    os << format_float(pair.lambda.real()) << ',' << format_float(pair.lambda.imag())
       << ',' << pair.k_label << ',' << (trusted ? 1 : 0) << ',';
    auto it = trunc_err.find(pair.k_label);
    if (trusted && it != trunc_err.end()) {
      os << format_float(it->second);
    } else {
      os << "nan";
    }
    os << '\n';
  }
  return os.str();
}

std::string band_csv(const bands::BandStructure& bs) {
  std::ostringstream os;
  os << "t,band_index,k_label,re_lambda,im_lambda,is_real\n";
  for (std::size_t b = 0; b < bs.bands.size(); ++b) {
    const auto& band = bs.bands[b];
    for (std::size_t i = 0; i < band.values.size(); ++i) {
      os << format_float(bs.t_grid[i]) << ',' << b << ',' << band.k_label << ','
         << format_float(band.values[i].real()) << ','
         << format_float(band.values[i].imag()) << ','
         << (bs.point_is_real(band.values[i]) ? 1 : 0) << '\n';
    }
  }
  return os.str();
}

std::string homotopy_csv(const verify::HomotopyTrace& trace) {
  std::ostringstream os;
  os << "eps,k_label,re_lambda,im_lambda\n";
  for (std::size_t i = 0; i < trace.eps_grid.size(); ++i) {
    for (std::size_t j = 0; j < trace.trajectories.size(); ++j) {
      os << format_float(trace.eps_grid[i]) << ',' << trace.labels[j] << ','
         << format_float(trace.trajectories[j][i].real()) << ','
         << format_float(trace.trajectories[j][i].imag()) << '\n';
    }
  }
  return os.str();
}

namespace {

json disk_list_json(const std::vector<std::pair<int, Disk>>& disks) {
  json list = json::array();
  for (const auto& [k, disk] : disks) {
    list.push_back({{"k", k},
                    {"center_re", disk.center.real()},
                    {"center_im", disk.center.imag()},
                    {"radius", disk.radius}});
  }
  return list;
}

}  // namespace

json enclosure_json(const enclosure::EnclosureReport& report) {
  json doc;
  doc["t"] = report.t;
  doc["n"] = report.n;
  doc["C"] = report.C;
  doc["N"] = report.N;
  doc["reality_threshold"] = report.reality_threshold;
  doc["reality_holds"] = report.reality_holds;
  doc["window"] = report.window;
  doc["disks"] = disk_list_json(report.disks);
  doc["strip"] = {{"re_lo", report.strip.lo}, {"re_hi", report.strip.hi}};
  doc["rectangle"] = {{"re_lo", report.rectangle.re_range.lo},
                      {"re_hi", report.rectangle.re_range.hi},
                      {"im_bound", report.rectangle.im_bound}};
  doc["nonreal_rectangle"] = {{"re_bound", report.nonreal_rect.re_bound},
                              {"im_bound", report.nonreal_rect.im_bound}};
  if (report.small_c_disks) doc["small_c_disks"] = disk_list_json(*report.small_c_disks);
  return doc;
}

json check_record_json(const verify::CheckRecord& record) {
  json doc;
  doc["name"] = record.name;
  doc["t"] = record.t;
  doc["eps"] = record.eps;
  doc["K"] = record.K;
  doc["applicable"] = record.applicable;
  doc["pass"] = record.pass;
  doc["checked"] = record.checked;
  json witnesses = json::array();
  for (const auto& witness : record.witnesses) {
    witnesses.push_back({{"re", witness.lambda.real()},
                         {"im", witness.lambda.imag()},
                         {"detail", witness.detail}});
  }
  doc["witnesses"] = std::move(witnesses);
  doc["stats"] = record.stats;
  return doc;
}

json verification_json(const verify::VerificationReport& report) {
  json doc;
  doc["schema"] = 1;
  doc["all_pass"] = report.all_pass();
  doc["summary"] = report.summary();
  json records = json::array();
  for (const auto& record : report.records) records.push_back(check_record_json(record));
  doc["records"] = std::move(records);
  return doc;
}

std::string verification_table(const verify::VerificationReport& report) {
  std::ostringstream os;
  os << "check                      t         eps   result  checked  witnesses\n";
  for (const auto& record : report.records) {
    char line[160];
    const char* result =
        !record.applicable ? "skip" : (record.pass ? "pass" : "FAIL");
    std::snprintf(line, sizeof(line), "%-25s %9.6f  %4.2f  %-6s  %7d  %9zu\n",
                  record.name.c_str(), record.t, record.eps, result, record.checked,
                  record.witnesses.size());
    os << line;
  }
  os << (report.all_pass() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n");
  return os.str();
}

namespace {

struct LinearMap {
  double scale = 1.0;
  double offset = 0.0;
  double operator()(double x) const { return scale * x + offset; }
};

LinearMap fit_range(double lo, double hi, double pix_lo, double pix_hi) {
  if (hi <= lo) hi = lo + 1.0;
  const double scale = (pix_hi - pix_lo) / (hi - lo);
  return {scale, pix_lo - scale * lo};
}

std::string svg_point(double x, double y) {
  std::ostringstream os;
  os << x << ',' << y << ' ';
  return os.str();
}

}  // namespace

std::string bands_svg(const bands::BandStructure& bs,
                      const enclosure::EnclosureReport& report, int overlay_index) {
  constexpr double width = 860.0;
  constexpr double panel_height = 420.0;
  constexpr double margin = 50.0;

  double re_lo = 0.0;
  double re_hi = 1.0;
  double im_extent = 1.0;
  bool first = true;
  for (const auto& band : bs.bands) {
    if (!bs.trusted(band)) continue;
    for (const auto& value : band.values) {
      if (first) {
        re_lo = re_hi = value.real();
        first = false;
      }
      re_lo = std::min(re_lo, value.real());
      re_hi = std::max(re_hi, value.real());
      im_extent = std::max(im_extent, std::abs(value.imag()));
    }
  }
  im_extent = std::max(im_extent, report.nonreal_rect.im_bound * 1.1);

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << 2 * panel_height << "\" viewBox=\"0 0 " << width << ' ' << 2 * panel_height
     << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Panel 1: Re(lambda) versus t.
  const LinearMap tx = fit_range(bs.t_grid.front(), bs.t_grid.back(), margin, width - margin);
  const LinearMap ty = fit_range(re_lo, re_hi, panel_height - margin, margin);
  os << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
     << width - 2 * margin << "\" height=\"" << panel_height - 2 * margin
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& band : bs.bands) {
    if (!bs.trusted(band)) continue;
    std::ostringstream points;
    bool nonreal = false;
    for (std::size_t i = 0; i < band.values.size(); ++i) {
      points << svg_point(tx(bs.t_grid[i]), ty(band.values[i].real()));
      nonreal = nonreal || !bs.point_is_real(band.values[i]);
    }
    os << "<polyline fill=\"none\" stroke=\"" << (nonreal ? "#c22" : "#235")
       << "\" stroke-width=\"1\" points=\"" << points.str() << "\"/>\n";
  }

  // Panel 2: complex-plane scatter with the regions at one grid point.
  const double top = panel_height;
  const LinearMap px = fit_range(re_lo, re_hi, margin, width - margin);
  const LinearMap py =
      fit_range(-im_extent, im_extent, top + panel_height - margin, top + margin);
  os << "<rect x=\"" << margin << "\" y=\"" << top + margin << "\" width=\""
     << width - 2 * margin << "\" height=\"" << panel_height - 2 * margin
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << margin << "\" y1=\"" << py(0.0) << "\" x2=\"" << width - margin
     << "\" y2=\"" << py(0.0) << "\" stroke=\"#bbb\"/>\n";
  os << "<rect x=\"" << px(-report.nonreal_rect.re_bound) << "\" y=\""
     << py(report.nonreal_rect.im_bound) << "\" width=\""
     << px(report.nonreal_rect.re_bound) - px(-report.nonreal_rect.re_bound)
     << "\" height=\""
     << py(-report.nonreal_rect.im_bound) - py(report.nonreal_rect.im_bound)
     << "\" fill=\"none\" stroke=\"#2a2\" stroke-dasharray=\"6 3\"/>\n";
  const auto& disks = report.small_c_disks ? *report.small_c_disks : report.disks;
  for (const auto& [k, disk] : disks) {
    if (disk.center.real() < re_lo || disk.center.real() > re_hi) continue;
    os << "<ellipse cx=\"" << px(disk.center.real()) << "\" cy=\""
       << py(disk.center.imag()) << "\" rx=\"" << std::abs(px.scale) * disk.radius
       << "\" ry=\"" << std::abs(py.scale) * disk.radius
       << "\" fill=\"none\" stroke=\"#777\"/>\n";
  }
  for (const auto& band : bs.bands) {
    const std::complex<double> value = band.values[overlay_index];
    if (value.real() < re_lo || value.real() > re_hi) continue;
    os << "<circle cx=\"" << px(value.real()) << "\" cy=\"" << py(value.imag())
       << "\" r=\"2.5\" fill=\"" << (bs.point_is_real(value) ? "#235" : "#c22")
       << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

OutputSet::OutputSet(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw config_error("cannot create output directory " + dir_.string());
}

void OutputSet::write(const std::string& name, const std::string& content) {
  const std::filesystem::path path = dir_ / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot write output file " + path.string());
  out << content;
  out.close();
  if (!out) throw config_error("failed writing output file " + path.string());
  written_.push_back(path);
}

void OutputSet::discard() {
  for (const auto& path : written_) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
  written_.clear();
}

}  // namespace ptbloch::io
