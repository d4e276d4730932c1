#include "rotframe/io.hpp"

#include <cmath>
#include <sstream>

#include "rotframe/expr_text.hpp"

namespace rotframe {

namespace {

void append_escaped(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

}  // namespace

void JsonValue::dump_to(std::string& out) const {
  if (std::holds_alternative<std::nullptr_t>(v_)) {
    out += "null";
  } else if (const auto* b = std::get_if<bool>(&v_)) {
    out += *b ? "true" : "false";
  } else if (const auto* i = std::get_if<long long>(&v_)) {
    out += std::to_string(*i);
  } else if (const auto* d = std::get_if<double>(&v_)) {
    if (std::isfinite(*d)) {
      out += format_real(*d);
    } else {
      out += "null";
    }
  } else if (const auto* s = std::get_if<std::string>(&v_)) {
    append_escaped(*s, out);
  } else if (const auto* a = std::get_if<Array>(&v_)) {
    out += '[';
    bool first = true;
    for (const auto& e : *a) {
      if (!first) out += ',';
      first = false;
      e.dump_to(out);
    }
    out += ']';
  } else {
    const auto& o = std::get<Object>(v_);
    out += '{';
    bool first = true;
    for (const auto& [k, val] : o) {  // std::map iterates in key order
      if (!first) out += ',';
      first = false;
      append_escaped(k, out);
      out += ':';
      val.dump_to(out);
    }
    out += '}';
  }
}

std::string JsonValue::dump() const {
  std::string out;
  dump_to(out);
  return out;
}

std::string csv_join(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    bool first = true;
    for (const auto& field : row) {
      if (!first) out += ',';
      first = false;
      if (field.find_first_of(",\"\r\n") != std::string::npos) {
        std::string quoted = "\"";
        for (char c : field) {
          if (c == '"') quoted += '"';
          quoted += c;
        }
        quoted += '"';
        out += quoted;
      } else {
        out += field;
      }
    }
    out += "\r\n";
  }
  return out;
}

namespace {

JsonValue::Object coefficients_object(const Mat4& g) {
  JsonValue::Object obj;
  for (const auto& [name, value] : coefficient_list(g)) obj[name] = value;
  return obj;
}

}  // namespace

std::string metric_json(const IntervalForm& form) {
  JsonValue::Object obj = coefficients_object(form.g);
  obj["c"] = form.c;
  obj["det"] = metric_determinant(form);
  obj["kind"] = "instantaneous";
  return JsonValue(std::move(obj)).dump();
}

std::string metric_json(const AveragedMetric& metric) {
  JsonValue::Object obj = coefficients_object(metric.g);
  obj["c"] = metric.c;
  obj["det"] = metric_determinant(metric);
  obj["kind"] = "averaged";
  obj["averaging"] = metric.exact_period ? "exact-period" : "windowed";
  obj["error_bound"] = metric.error_bound;
  return JsonValue(std::move(obj)).dump();
}

std::string metric_csv(const Mat4& g) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"coefficient", "value"});
  for (const auto& [name, value] : coefficient_list(g)) {
    rows.push_back({name, format_real(value)});
  }
  return csv_join(rows);
}

std::string property_report_json(const PropertyReport& report, int trials) {
  JsonValue::Object obj;
  obj["all_pass"] = report.all_pass();
  obj["seed"] = static_cast<long long>(report.seed);
  obj["tol"] = report.tol;
  obj["trials"] = trials;
  JsonValue::Array checks;
  for (const auto& c : report.checks) {
    JsonValue::Object e;
    e["name"] = c.name;
    e["note"] = c.note;
    e["pass"] = c.pass;
    e["tol"] = c.tol;
    e["trials"] = c.trials;
    e["worst"] = c.worst;
    checks.push_back(JsonValue(std::move(e)));
  }
  obj["checks"] = JsonValue(std::move(checks));
  return JsonValue(std::move(obj)).dump();
}

std::string property_report_csv(const PropertyReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"check", "trials", "worst", "tol", "pass"});
  for (const auto& c : report.checks) {
    rows.push_back({c.name, std::to_string(c.trials), format_real(c.worst), format_real(c.tol),
                    c.pass ? "true" : "false"});
  }
  return csv_join(rows);
}

std::string size_spectrum_json(const SizeSpectrum& spec) {
  JsonValue::Object obj;
  obj["k"] = spec.k;
  obj["l"] = spec.mode.l;
  obj["mode"] = spec.mode.even ? "even" : "odd";
  obj["count"] = static_cast<long long>(spec.roots.size());
  JsonValue::Array roots, sizes;
  for (double r : spec.roots) roots.push_back(r);
  for (double s : spec.sizes) sizes.push_back(s);
  obj["roots"] = JsonValue(std::move(roots));
  obj["sizes"] = JsonValue(std::move(sizes));
  return JsonValue(std::move(obj)).dump();
}

std::string size_spectrum_csv(const SizeSpectrum& spec) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"index", "root", "size"});
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    rows.push_back({std::to_string(i + 1), format_real(spec.roots[i]),
                    format_real(spec.sizes[i])});
  }
  return csv_join(rows);
}

namespace {

JsonValue::Object residual_object(const ResidualReport& rep) {
  JsonValue::Object grid;
  grid["extent"] = rep.grid.extent;
  grid["h"] = rep.grid.h;
  grid["stencil"] = rep.grid.stencil;
  grid["tau"] = rep.grid.tau;
  JsonValue::Object obj;
  obj["grid"] = JsonValue(std::move(grid));
  obj["max"] = rep.max;
  obj["rms"] = rep.rms;
  obj["nodes"] = rep.nodes;
  obj["resolution_warning"] = rep.resolution_warning;
  obj["scale"] = rep.scale;
  return obj;
}

}  // namespace

std::string residual_report_json(const ResidualReport& rep, double beta, double gamma,
                                 const std::string& profile_name, double order_estimate,
                                 bool has_order) {
  JsonValue::Object obj = residual_object(rep);
  obj["beta"] = beta;
  obj["beta_term"] = rep.beta_term;
  obj["gamma"] = gamma;
  obj["profile"] = profile_name;
  if (has_order) obj["order_estimate"] = order_estimate;
  return JsonValue(std::move(obj)).dump();
}

std::string klein_gordon_json(const KleinGordonReport& rep, double beta, double gamma,
                              const std::string& profile_name, double order_estimate,
                              bool has_order) {
  JsonValue::Object obj = residual_object(rep.residual);
  obj["beta"] = beta;
  obj["beta_term"] = rep.residual.beta_term;
  obj["gamma"] = gamma;
  obj["profile"] = profile_name;
  if (has_order) obj["order_estimate"] = order_estimate;
  obj["scalar_excluded"] = rep.scalar.excluded;
  obj["scalar_mean_im"] = rep.scalar.mean.imag();
  obj["scalar_mean_re"] = rep.scalar.mean.real();
  obj["scalar_nodes"] = rep.scalar.nodes;
  obj["scalar_std"] = rep.scalar.stddev;
  return JsonValue(std::move(obj)).dump();
}

std::string scan_json(const std::vector<CancellationScanEntry>& entries,
                      const std::vector<double>& cancellations, PairSigns signs,
                      const std::string& profile_name) {
  JsonValue::Object obj;
  obj["profile"] = profile_name;
  obj["signs"] = signs == PairSigns::Same ? "same" : "opposite";
  obj["points"] = static_cast<long long>(entries.size());
  JsonValue::Array results;
  for (const auto& e : entries) {
    results.push_back(JsonValue(JsonValue::Array{e.a, e.max_external_amplitude}));
  }
  obj["results"] = JsonValue(std::move(results));
  JsonValue::Array zeros;
  for (double a : cancellations) zeros.push_back(a);
  obj["cancellations"] = JsonValue(std::move(zeros));
  return JsonValue(std::move(obj)).dump();
}

std::string scan_csv(const std::vector<CancellationScanEntry>& entries) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"a", "max_external_amplitude"});
  for (const auto& e : entries) {
    rows.push_back({format_real(e.a), format_real(e.max_external_amplitude)});
  }
  return csv_join(rows);
}

std::string obj_export(const SurfaceMesh& mesh) {
  std::string out;
  for (const auto& v : mesh.vertices) {
    out += "v ";
    out += format_real(v.x);
    out += ' ';
    out += format_real(v.y);
    out += ' ';
    out += format_real(v.z);
    out += '\n';
  }
  for (const auto& t : mesh.triangles) {
    out += "f ";
    out += std::to_string(t[0] + 1);
    out += ' ';
    out += std::to_string(t[1] + 1);
    out += ' ';
    out += std::to_string(t[2] + 1);
    out += '\n';
  }
  return out;
}

SurfaceMesh obj_import(const std::string& text) {
  SurfaceMesh mesh;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      Vec3 v;
      ls >> v.x >> v.y >> v.z;
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f{};
      ls >> f[0] >> f[1] >> f[2];
      mesh.triangles.push_back({f[0] - 1, f[1] - 1, f[2] - 1});
    }
  }
  return mesh;
}

std::string field_dump_csv(const BoostedWave& wave, const GridSpec& grid) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"x", "y", "z", "re", "im"});
  const int n = static_cast<int>(std::llround(2.0 * grid.extent / grid.h)) + 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const Vec3 x{-grid.extent + i * grid.h, -grid.extent + j * grid.h,
                     -grid.extent + k * grid.h};
        const Complex p = wave.psi(x, grid.tau);
        rows.push_back({format_real(x.x), format_real(x.y), format_real(x.z),
                        format_real(p.real()), format_real(p.imag())});
      }
    }
  }
  return csv_join(rows);
}

}  // namespace rotframe
