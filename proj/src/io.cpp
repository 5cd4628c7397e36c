#include "cavmag/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <nlohmann/json.hpp>
#include <numbers>
#include <sstream>

#include "cavmag/errors.hpp"

namespace cavmag::io {

using nlohmann::json;

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void atomic_write_text(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open '" + tmp.string() + "' for writing");
    out << content;
    if (!out.flush()) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ConfigError("cannot move '" + tmp.string() + "' to '" + target.string() +
                      "': " + ec.message());
  }
}

namespace {

double parse_number(const std::string& token, long line) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError("expected a number, got '" + token + "'", line);
  return v;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string token;
  while (ss >> token) out.push_back(token);
  return out;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

fit::Spectrum load_touchstone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  fit::Spectrum spec;
  spec.source = path;

  double unit_scale = 1e9;  // Touchstone default unit is GHz
  enum class Fmt { ri, ma, db } fmt = Fmt::ma;
  bool saw_options = false;

  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(raw);
    if (const auto bang = line.find('!'); bang != std::string::npos)
      line = line.substr(0, bang);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;

    if (line[first] == '[') {
      if (lower(line).find("[version]") != std::string::npos)
        throw ParseError("Touchstone v2 files are not supported", line_no);
      throw ParseError("unexpected keyword block '" + line + "'", line_no);
    }

    if (line[first] == '#') {
      if (saw_options)
        throw ParseError("multiple option lines", line_no);
      saw_options = true;
      const auto tokens = split_whitespace(line.substr(first + 1));
      std::size_t i = 0;
      while (i < tokens.size()) {
        const std::string t = lower(tokens[i]);
        if (t == "hz") unit_scale = 1.0;
        else if (t == "khz") unit_scale = 1e3;
        else if (t == "mhz") unit_scale = 1e6;
        else if (t == "ghz") unit_scale = 1e9;
        else if (t == "s") { /* scattering parameters */ }
        else if (t == "ri") fmt = Fmt::ri;
        else if (t == "ma") fmt = Fmt::ma;
        else if (t == "db") fmt = Fmt::db;
        else if (t == "r") {
          if (i + 1 >= tokens.size())
            throw ParseError("option line: 'R' without an impedance value", line_no);
          ++i;
          parse_number(tokens[i], line_no);  // accepted, value checked for form only
        } else if (t == "y" || t == "z" || t == "h" || t == "g") {
          throw ParseError("only S-parameter files are supported", line_no);
        } else {
          throw ParseError("malformed option line near '" + tokens[i] + "'", line_no);
        }
        ++i;
      }
      continue;
    }

    const auto tokens = split_whitespace(line);
    if (tokens.size() != 9)
      throw ParseError("expected 9 columns (frequency + four S-parameter pairs), got " +
                           std::to_string(tokens.size()),
                       line_no);
    std::vector<double> v(9);
    for (std::size_t i = 0; i < 9; ++i) v[i] = parse_number(tokens[i], line_no);

    const double f_hz = v[0] * unit_scale;
    if (!spec.f_grid_hz.empty() && !(f_hz > spec.f_grid_hz.back()))
      throw ParseError("frequencies must be strictly increasing", line_no);

    // Two-port v1 row order: S11 S21 S12 S22; S21 occupies columns 3 and 4.
    const double a = v[3], b = v[4];
    std::complex<double> s21;
    switch (fmt) {
      case Fmt::ri: s21 = {a, b}; break;
      case Fmt::ma: s21 = std::polar(a, b * std::numbers::pi / 180.0); break;
      case Fmt::db: s21 = std::polar(std::pow(10.0, a / 20.0), b * std::numbers::pi / 180.0); break;
    }
    spec.f_grid_hz.push_back(f_hz);
    spec.s21.push_back(s21);
  }

  if (spec.f_grid_hz.empty()) throw ParseError("no data rows in '" + path + "'");
  spec.validate();
  return spec;
}

fit::Spectrum load_csv_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");

  std::string raw;
  long line_no = 0;
  // Skip leading '#' provenance/comment lines.
  do {
    if (!std::getline(in, raw)) throw ParseError("empty file '" + path + "'");
    ++line_no;
  } while (!strip_cr(raw).empty() && strip_cr(raw)[0] == '#');
  if (strip_cr(raw).empty())
    throw ParseError("missing header row in '" + path + "'", line_no);

  const auto header = split_commas(strip_cr(raw));
  long col_f = -1, col_re = -1, col_im = -1, col_mag = -1, col_db = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string name = lower(header[i]);
    const long idx = static_cast<long>(i);
    if (name == "freq_hz") col_f = idx;
    else if (name == "re_s21") col_re = idx;
    else if (name == "im_s21") col_im = idx;
    else if (name == "mag_s21") col_mag = idx;
    else if (name == "mag_db_s21" || name == "mag_db") col_db = idx;
    else throw ParseError("unknown column '" + header[i] + "'", line_no);
  }
  if (col_f < 0) throw ParseError("missing required column freq_hz", line_no);
  const bool complex_data = col_re >= 0 && col_im >= 0;
  if ((col_re >= 0) != (col_im >= 0))
    throw ParseError("re_s21 and im_s21 must appear together", line_no);
  if (!complex_data && col_mag < 0 && col_db < 0)
    throw ParseError("need re_s21/im_s21 or a magnitude column", line_no);

  fit::Spectrum spec;
  spec.source = path;
  spec.magnitude_only = !complex_data;

  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_cr(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_commas(line);
    if (fields.size() != header.size())
      throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                           std::to_string(fields.size()),
                       line_no);
    const double f_hz = parse_number(fields[static_cast<std::size_t>(col_f)], line_no);
    if (!spec.f_grid_hz.empty() && !(f_hz > spec.f_grid_hz.back()))
      throw ParseError("frequencies must be strictly increasing", line_no);

    std::complex<double> s21;
    if (complex_data) {
      s21 = {parse_number(fields[static_cast<std::size_t>(col_re)], line_no),
             parse_number(fields[static_cast<std::size_t>(col_im)], line_no)};
    } else if (col_mag >= 0) {
      s21 = {parse_number(fields[static_cast<std::size_t>(col_mag)], line_no), 0.0};
    } else {
      const double db = parse_number(fields[static_cast<std::size_t>(col_db)], line_no);
      s21 = {std::isinf(db) && db < 0 ? 0.0 : std::pow(10.0, db / 20.0), 0.0};
    }
    spec.f_grid_hz.push_back(f_hz);
    spec.s21.push_back(s21);
  }
  if (spec.f_grid_hz.empty()) throw ParseError("no data rows in '" + path + "'");
  spec.validate();
  return spec;
}

DataFileDescriptor describe_data_file(const std::string& path) {
  DataFileDescriptor desc;
  desc.path = path;
  const std::string ext = lower(std::filesystem::path(path).extension().string());
  if (ext == ".s2p") {
    desc.format = DataFormat::touchstone_s2p;
    return desc;
  }
  if (ext == ".csv") {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string header;
    while (std::getline(in, header) && !strip_cr(header).empty() &&
           strip_cr(header)[0] == '#') {
    }
    const std::string h = lower(strip_cr(header));
    desc.format = h.find("re_s21") != std::string::npos ? DataFormat::csv_complex
                                                        : DataFormat::csv_magnitude;
    return desc;
  }
  throw ParseError("unrecognized data file extension '" + ext + "' for '" + path +
                   "' (expected .s2p or .csv)");
}

fit::Spectrum load_spectrum(const DataFileDescriptor& desc) {
  switch (desc.format) {
    case DataFormat::touchstone_s2p:
      return load_touchstone(desc.path);
    case DataFormat::csv_complex: {
      auto spec = load_csv_spectrum(desc.path);
      if (spec.magnitude_only)
        throw ParseError("'" + desc.path +
                         "' declared complex but contains no re_s21/im_s21 columns");
      return spec;
    }
    case DataFormat::csv_magnitude: {
      auto spec = load_csv_spectrum(desc.path);
      if (!spec.magnitude_only)
        throw ParseError("'" + desc.path +
                         "' declared magnitude-only but carries complex columns");
      return spec;
    }
  }
  throw ParseError("unhandled data format for '" + desc.path + "'");
}

void write_spectrum_csv(const std::string& path, const fit::Spectrum& spec) {
  spec.validate();
  std::ostringstream out;
  out << "freq_hz,re_s21,im_s21,mag_db\n";
  for (std::size_t i = 0; i < spec.f_grid_hz.size(); ++i) {
    const ComplexS21 s{spec.s21[i]};
    out << format_sig12(spec.f_grid_hz[i]) << ',' << format_sig12(s.re()) << ','
        << format_sig12(s.im()) << ',' << format_sig12(db_magnitude(s)) << '\n';
  }
  atomic_write_text(path, out.str());
}

void write_grid_file(const std::string& path, const hybrid::FieldSweepMap& map) {
  map.validate();
  json header;
  header["schema_version"] = "1";
  header["kind"] = "field_sweep_map";
  header["values"] = "mag_db";
  header["h_oe"] = map.h_grid_oe;
  header["freq_hz"] = map.f_grid_hz;
  header["angle_deg"] = map.angle.degrees();
  if (!map.provenance.empty()) {
    json prov = json::parse(map.provenance, nullptr, false);
    header["provenance"] = prov.is_discarded() ? json(map.provenance) : prov;
  }

  std::ostringstream out;
  out << header.dump() << '\n';
  const std::size_t cols = map.f_grid_hz.size();
  for (std::size_t r = 0; r < map.h_grid_oe.size(); ++r) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = map.at(r, j);
      const double db = map.values_in_db
                            ? v
                            : (v == 0.0 ? -std::numeric_limits<double>::infinity()
                                        : 20.0 * std::log10(v));
      if (j) out << ',';
      out << format_sig12(db);
    }
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

hybrid::FieldSweepMap load_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::string raw;
  long line_no = 0;
  if (!std::getline(in, raw)) throw ParseError("empty grid file '" + path + "'");
  ++line_no;

  const json header = json::parse(strip_cr(raw), nullptr, false);
  if (header.is_discarded() || !header.is_object())
    throw ParseError("grid header is not a JSON object", line_no);
  if (!header.contains("h_oe") || !header.contains("freq_hz"))
    throw ParseError("grid header must carry h_oe and freq_hz axes", line_no);
  if (header.value("kind", "") != std::string("field_sweep_map"))
    throw ParseError("grid header kind must be 'field_sweep_map'", line_no);

  hybrid::FieldSweepMap map;
  map.h_grid_oe = header["h_oe"].get<std::vector<double>>();
  map.f_grid_hz = header["freq_hz"].get<std::vector<double>>();
  map.values_in_db = header.value("values", "mag_db") == std::string("mag_db");
  map.angle = Angle(header.value("angle_deg", 0.0));
  if (header.contains("provenance")) map.provenance = header["provenance"].dump();

  const std::size_t cols = map.f_grid_hz.size();
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip_cr(raw);
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != cols)
      throw ParseError("expected " + std::to_string(cols) + " values per row, got " +
                           std::to_string(fields.size()),
                       line_no);
    for (const auto& field : fields) map.values.push_back(parse_number(field, line_no));
  }
  if (map.values.size() != map.h_grid_oe.size() * cols)
    throw ParseError("grid has " + std::to_string(map.values.size() / std::max<std::size_t>(cols, 1)) +
                     " rows but the header declares " +
                     std::to_string(map.h_grid_oe.size()));
  map.validate();
  return map;
}

json fit_result_to_json(const fit::FitResult& result) {
  const fit::ResidualReport report = fit::residual_report(result);
  json doc;
  doc["schema_version"] = "1";
  doc["kind"] = "fit_result";
  doc["converged"] = result.converged;
  doc["status"] = result.status;
  doc["iterations"] = result.iterations;
  doc["objective"] = result.objective;
  doc["residual_rms"] = report.rms;
  doc["residual_max_abs"] = report.max_abs;
  doc["n_points"] = report.n_points;
  json params = json::array();
  for (const auto& p : result.params) {
    json entry;
    entry["name"] = p.name;
    entry["value"] = p.value;
    entry["std_error"] = std::isnan(p.std_error) ? json(nullptr) : json(p.std_error);
    entry["free"] = p.free;
    entry["lower"] = p.lower;
    entry["upper"] = p.upper;
    params.push_back(entry);
  }
  doc["parameters"] = params;
  doc["objective_trace"] = result.objective_trace;
  doc["residuals"] = result.residuals;
  return doc;
}

void write_json_file(const std::string& path, const json& doc) {
  atomic_write_text(path, doc.dump(2) + "\n");
}

}  // namespace cavmag::io
