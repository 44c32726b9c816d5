#include "hecke/config.hpp"

#include <cstdio>
#include <set>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hecke/errors.hpp"

namespace hecke {

using nlohmann::json;

ParsedJob parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");

  static const std::set<std::string> known = {
      "preset", "rank", "roots", "coroots", "simple", "fs",
      "q",      "cmd",  "params", "format",  "out",    "seed"};
  for (auto& [key, val] : doc.items())
    if (!known.count(key)) throw ValidationError("unknown config key '" + key + "'");

  ParsedJob job;
  JobConfig& cfg = job.cfg;

  if (doc.contains("preset")) {
    cfg.datum = preset_datum(doc["preset"].get<std::string>());
  } else if (doc.contains("rank")) {
    RootDatum d;
    d.rank = doc["rank"].get<int>();
    if (!doc.contains("roots") || !doc.contains("coroots") || !doc.contains("simple"))
      throw ValidationError("explicit datum requires roots, coroots, simple");
    for (auto& r : doc["roots"]) d.roots.push_back(r.get<Vec>());
    for (auto& r : doc["coroots"]) d.coroots.push_back(r.get<Vec>());
    for (auto& s : doc["simple"]) d.simple.push_back(s.get<int>());
    d.name = "custom";
    d.finalize();
    cfg.datum = d;
  } else {
    throw ValidationError("config requires 'preset' or an explicit datum");
  }

  if (doc.contains("fs")) {
    const json& fs = doc["fs"];
    if (fs.is_number_integer()) {
      int f = fs.get<int>();
      if (f <= 0) throw ValidationError("labels must be positive");
      cfg.labels.uniform = f;
    } else if (fs.is_object()) {
      for (auto& [k, v] : fs.items()) {
        int f = v.get<int>();
        if (f <= 0) throw ValidationError("labels must be positive");
        cfg.labels.per_class[k] = f;
      }
    } else {
      throw ValidationError("fs must be an integer or an object");
    }
  }

  if (doc.contains("q")) {
    cfg.q = doc["q"].get<double>();
    if (!(cfg.q > 0)) throw ValidationError("q must be positive");
  }
  if (!doc.contains("cmd")) throw ValidationError("cmd required");
  cfg.cmd = doc["cmd"].get<std::string>();
  if (doc.contains("format")) {
    cfg.format = doc["format"].get<std::string>();
    if (cfg.format != "text" && cfg.format != "csv" && cfg.format != "json")
      throw ValidationError("format must be text, csv or json");
  }
  if (doc.contains("out")) cfg.out = doc["out"].get<std::string>();
  if (doc.contains("seed")) cfg.seed = doc["seed"].get<unsigned long long>();

  job.params_holder = std::make_shared<json>(
      doc.contains("params") ? doc["params"] : json::object());
  cfg.params = job.params_holder.get();
  return job;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12e", v);
  return buf;
}

std::string format_complex(Cplx v) {
  return format_double(v.real()) + (v.imag() < 0 ? "-" : "+") +
         format_double(std::abs(v.imag())) + "i";
}

std::string emit(const Output& out, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json scalars = nlohmann::ordered_json::object();
    for (auto& [k, v] : out.scalars) scalars[k] = v;
    doc["scalars"] = scalars;
    if (!out.headers.empty()) {
      nlohmann::ordered_json table;
      table["headers"] = out.headers;
      nlohmann::ordered_json rows = nlohmann::ordered_json::array();
      for (auto& r : out.rows) rows.push_back(r);
      table["rows"] = rows;
      doc["table"] = table;
    }
    os << doc.dump(2) << "\n";
  } else if (format == "csv") {
    if (!out.headers.empty()) {
      for (auto& [k, v] : out.scalars) os << "# " << k << "=" << v << "\n";
      for (size_t i = 0; i < out.headers.size(); ++i)
        os << (i ? "," : "") << out.headers[i];
      os << "\n";
      for (auto& r : out.rows) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
      }
    } else {
      os << "key,value\n";
      for (auto& [k, v] : out.scalars) os << k << "," << v << "\n";
    }
  } else {
    for (auto& [k, v] : out.scalars) os << k << " = " << v << "\n";
    if (!out.headers.empty()) {
      std::vector<size_t> widths(out.headers.size());
      for (size_t i = 0; i < out.headers.size(); ++i) widths[i] = out.headers[i].size();
      for (auto& r : out.rows)
        for (size_t i = 0; i < r.size() && i < widths.size(); ++i)
          widths[i] = std::max(widths[i], r[i].size());
      for (size_t i = 0; i < out.headers.size(); ++i) {
        os << out.headers[i];
        os << std::string(widths[i] - out.headers[i].size() + 2, ' ');
      }
      os << "\n";
      for (auto& r : out.rows) {
        for (size_t i = 0; i < r.size(); ++i) {
          os << r[i];
          if (i < widths.size()) os << std::string(widths[i] - r[i].size() + 2, ' ');
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

}  // namespace hecke
