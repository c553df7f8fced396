#include "pprh/errors.hpp"
#include "pprh/formdata.hpp"

#include <json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace pprh::formdata {

using nlohmann::json;

namespace {

const int kRoundTripDigits = std::numeric_limits<Real>::max_digits10;

std::string exact_string(const Real& x) { return to_string(x, kRoundTripDigits); }

Real parse_decimal(const json& value, const std::string& where) {
  if (value.is_string()) return real_from_string(value.get<std::string>());
  if (value.is_number_integer()) return Real(value.dump());
  if (value.is_number()) return Real(value.dump());
  throw MalformedDocument(where + ": expected a decimal string or number");
}

Complex parse_value(const json& value, const std::string& where) {
  if (value.is_object()) {
    if (!value.contains("re")) throw MalformedDocument(where + ": complex value needs \"re\"");
    const Real re = parse_decimal(value.at("re"), where);
    const Real im = value.contains("im") ? parse_decimal(value.at("im"), where) : Real(0);
    return Complex(re, im);
  }
  return Complex(parse_decimal(value, where));
}

json value_to_json(const Complex& z) {
  if (z.imag() == 0) return exact_string(z.real());
  return json{{"re", exact_string(z.real())}, {"im", exact_string(z.imag())}};
}

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.contains(key)) throw MalformedDocument(std::string("missing field \"") + key + "\"");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("field \"") + key + "\": " + e.what());
  }
}

long long as_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw MalformedDocument(where + ": expected an integer");
  return v.get<long long>();
}

const json& as_array(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_array()) throw MalformedDocument(std::string("field \"") + key + "\" must be a list");
  return v;
}

EigenformData from_json(const json& doc) {
  if (!doc.is_object()) throw MalformedDocument("eigenform document must be a JSON object");
  EigenformData data;
  data.field.label = doc.value("label", std::string());
  data.field.degree = required<int>(doc, "degree");
  data.field.discriminant = required<long long>(doc, "discriminant");
  data.weight = required<int>(doc, "weight");
  data.sign = required<int>(doc, "sign");
  if (doc.contains("conductor_scale")) {
    data.conductor_scale = parse_decimal(doc.at("conductor_scale"), "conductor_scale");
  }
  if (doc.contains("normalized")) data.normalized = required<bool>(doc, "normalized");
  if (doc.contains("norms_present")) {
    for (const json& v : as_array(doc, "norms_present")) {
      data.field.norms_present.push_back(as_integer(v, "norms_present"));
    }
  }
  if (!doc.contains("coefficients")) throw MalformedDocument("missing field \"coefficients\"");
  for (const json& entry : as_array(doc, "coefficients")) {
    if (!entry.is_object() || !entry.contains("norm") || !entry.contains("value")) {
      throw MalformedDocument("coefficient entries need \"norm\" and \"value\"");
    }
    const long long norm = as_integer(entry.at("norm"), "coefficient norm");
    const Complex value = parse_value(entry.at("value"), "coefficient " + std::to_string(norm));
    auto [it, inserted] = data.coefficients.emplace(norm, value);
    if (!inserted) it->second += value;
  }
  if (doc.contains("primes")) {
    for (const json& entry : as_array(doc, "primes")) {
      if (!entry.is_object() || !entry.contains("norm") || !entry.contains("value")) {
        throw MalformedDocument("prime entries need \"norm\", \"index\" and \"value\"");
      }
      const PrimeKey key{as_integer(entry.at("norm"), "prime norm"),
                         static_cast<int>(as_integer(entry.value("index", json(0)), "prime index"))};
      if (!data.prime_data.emplace(key, parse_value(entry.at("value"), "prime")).second) {
        throw MalformedDocument("duplicate prime entry for norm " + std::to_string(key.norm));
      }
    }
  }
  if (doc.contains("splitting")) {
    for (const json& entry : as_array(doc, "splitting")) {
      if (!entry.is_object() || !entry.contains("p") || !entry.contains("residue_degrees")) {
        throw MalformedDocument("splitting entries need \"p\" and \"residue_degrees\"");
      }
      Splitting s;
      s.prime = as_integer(entry.at("p"), "splitting prime");
      for (const json& f : entry.at("residue_degrees")) {
        s.residue_degrees.push_back(static_cast<int>(as_integer(f, "residue degree")));
      }
      data.splitting.push_back(std::move(s));
    }
  }
  if (doc.contains("complete_through")) {
    data.complete_through = as_integer(doc.at("complete_through"), "complete_through");
  }
  if (doc.contains("gaps")) {
    for (const json& entry : as_array(doc, "gaps")) {
      data.gap_bounds[as_integer(entry.at("norm"), "gap norm")] = parse_decimal(entry.at("bound"), "gap");
    }
  }
  if (doc.contains("missing_primes")) {
    for (const json& entry : as_array(doc, "missing_primes")) {
      data.missing_primes.push_back({as_integer(entry.at("norm"), "missing prime norm"),
                                     static_cast<int>(as_integer(entry.at("index"), "missing prime index"))});
    }
  }
  return data;
}

json to_json(const EigenformData& data) {
  json doc;
  doc["label"] = data.field.label;
  doc["degree"] = data.field.degree;
  doc["discriminant"] = data.field.discriminant;
  doc["weight"] = data.weight;
  doc["sign"] = data.sign;
  if (data.conductor_scale) doc["conductor_scale"] = exact_string(*data.conductor_scale);
  doc["normalized"] = data.normalized;
  if (!data.field.norms_present.empty()) doc["norms_present"] = data.field.norms_present;
  json coefficients = json::array();
  for (const auto& [norm, value] : data.coefficients) {
    coefficients.push_back({{"norm", norm}, {"value", value_to_json(value)}});
  }
  doc["coefficients"] = std::move(coefficients);
  if (!data.prime_data.empty()) {
    json primes = json::array();
    for (const auto& [key, value] : data.prime_data) {
      primes.push_back({{"norm", key.norm}, {"index", key.index}, {"value", value_to_json(value)}});
    }
    doc["primes"] = std::move(primes);
  }
  if (!data.splitting.empty()) {
    json splitting = json::array();
    for (const auto& s : data.splitting) splitting.push_back({{"p", s.prime}, {"residue_degrees", s.residue_degrees}});
    doc["splitting"] = std::move(splitting);
  }
  if (data.complete_through > 0) doc["complete_through"] = data.complete_through;
  if (!data.gap_bounds.empty()) {
    json gaps = json::array();
    for (const auto& [norm, bound] : data.gap_bounds) gaps.push_back({{"norm", norm}, {"bound", exact_string(bound)}});
    doc["gaps"] = std::move(gaps);
  }
  if (!data.missing_primes.empty()) {
    json missing = json::array();
    for (const auto& key : data.missing_primes) missing.push_back({{"norm", key.norm}, {"index", key.index}});
    doc["missing_primes"] = std::move(missing);
  }
  return doc;
}

// Line-oriented "table" format: one keyword per line, '#' starts a comment.
EigenformData from_table(const std::string& document) {
  EigenformData data;
  bool have_degree = false, have_discriminant = false, have_weight = false, have_sign = false;
  std::istringstream lines(document);
  std::string line;
  int line_number = 0;
  auto fail = [&](const std::string& why) -> MalformedDocument {
    return MalformedDocument("line " + std::to_string(line_number) + ": " + why);
  };
  auto read_integer = [&](std::istringstream& in, const char* what) {
    long long v;
    if (!(in >> v)) throw fail(std::string("expected integer ") + what);
    return v;
  };
  auto read_real = [&](std::istringstream& in, const char* what) {
    std::string token;
    if (!(in >> token)) throw fail(std::string("expected decimal ") + what);
    return real_from_string(token);
  };
  auto read_complex = [&](std::istringstream& in) {
    const Real re = read_real(in, "value");
    std::string token;
    if (in >> token) return Complex(re, real_from_string(token));
    return Complex(re);
  };
  while (std::getline(lines, line)) {
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "label") {
      std::getline(in >> std::ws, data.field.label);
    } else if (key == "degree") {
      data.field.degree = static_cast<int>(read_integer(in, "degree"));
      have_degree = true;
    } else if (key == "discriminant") {
      data.field.discriminant = read_integer(in, "discriminant");
      have_discriminant = true;
    } else if (key == "weight") {
      data.weight = static_cast<int>(read_integer(in, "weight"));
      have_weight = true;
    } else if (key == "sign") {
      data.sign = static_cast<int>(read_integer(in, "sign"));
      have_sign = true;
    } else if (key == "conductor_scale") {
      data.conductor_scale = read_real(in, "conductor scale");
    } else if (key == "normalized") {
      std::string flag;
      in >> flag;
      if (flag != "true" && flag != "false") throw fail("normalized must be true or false");
      data.normalized = flag == "true";
    } else if (key == "norms_present") {
      long long v;
      while (in >> v) data.field.norms_present.push_back(v);
    } else if (key == "splitting") {
      Splitting s;
      s.prime = read_integer(in, "prime");
      int f;
      while (in >> f) s.residue_degrees.push_back(f);
      data.splitting.push_back(std::move(s));
    } else if (key == "coefficient") {
      const long long norm = read_integer(in, "norm");
      const Complex value = read_complex(in);
      auto [it, inserted] = data.coefficients.emplace(norm, value);
      if (!inserted) it->second += value;
    } else if (key == "prime") {
      const long long norm = read_integer(in, "norm");
      const int index = static_cast<int>(read_integer(in, "index"));
      if (!data.prime_data.emplace(PrimeKey{norm, index}, read_complex(in)).second) {
        throw fail("duplicate prime entry");
      }
    } else if (key == "complete_through") {
      data.complete_through = read_integer(in, "norm");
    } else if (key == "gap") {
      const long long norm = read_integer(in, "norm");
      data.gap_bounds[norm] = read_real(in, "bound");
    } else if (key == "missing_prime") {
      const long long norm = read_integer(in, "norm");
      data.missing_primes.push_back({norm, static_cast<int>(read_integer(in, "index"))});
    } else {
      throw fail("unknown keyword '" + key + "'");
    }
  }
  if (!have_degree || !have_discriminant || !have_weight || !have_sign) {
    throw MalformedDocument("table document needs degree, discriminant, weight and sign lines");
  }
  return data;
}

std::string complex_to_table(const Complex& z) {
  std::string out = exact_string(z.real());
  if (z.imag() != 0) out += " " + exact_string(z.imag());
  return out;
}

std::string to_table(const EigenformData& data) {
  std::ostringstream out;
  out << "label " << data.field.label << '\n';
  out << "degree " << data.field.degree << '\n';
  out << "discriminant " << data.field.discriminant << '\n';
  out << "weight " << data.weight << '\n';
  out << "sign " << data.sign << '\n';
  if (data.conductor_scale) out << "conductor_scale " << exact_string(*data.conductor_scale) << '\n';
  out << "normalized " << (data.normalized ? "true" : "false") << '\n';
  if (!data.field.norms_present.empty()) {
    out << "norms_present";
    for (long long m : data.field.norms_present) out << ' ' << m;
    out << '\n';
  }
  for (const auto& s : data.splitting) {
    out << "splitting " << s.prime;
    for (int f : s.residue_degrees) out << ' ' << f;
    out << '\n';
  }
  for (const auto& [norm, value] : data.coefficients) out << "coefficient " << norm << ' ' << complex_to_table(value) << '\n';
  for (const auto& [key, value] : data.prime_data) {
    out << "prime " << key.norm << ' ' << key.index << ' ' << complex_to_table(value) << '\n';
  }
  if (data.complete_through > 0) out << "complete_through " << data.complete_through << '\n';
  for (const auto& [norm, bound] : data.gap_bounds) out << "gap " << norm << ' ' << exact_string(bound) << '\n';
  for (const auto& key : data.missing_primes) out << "missing_prime " << key.norm << ' ' << key.index << '\n';
  return out.str();
}

json parse_json_text(const std::string& document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw MalformedDocument(std::string("JSON syntax error: ") + e.what());
  }
}

}  // namespace

DocumentFormat parse_format(const std::string& name) {
  if (name == "json") return DocumentFormat::Json;
  if (name == "table") return DocumentFormat::Table;
  throw MalformedDocument("unknown document format '" + name + "'");
}

EigenformData parse_eigenform(const std::string& document, DocumentFormat format) {
  EigenformData data;
  if (format == DocumentFormat::Json) {
    const json doc = parse_json_text(document);
    try {
      data = from_json(doc);
    } catch (const json::exception& e) {
      throw MalformedDocument(std::string("eigenform document: ") + e.what());
    }
  } else {
    data = from_table(document);
  }
  data.validate();
  return data;
}

std::string serialize(const EigenformData& data, DocumentFormat format) {
  if (format == DocumentFormat::Json) return to_json(data).dump(2) + "\n";
  return to_table(data);
}

LambdaFixture parse_lambda_fixture(const std::string& document) {
  const json doc = parse_json_text(document);
  if (!doc.is_object()) throw MalformedDocument("lambda fixture must be a JSON object");
  LambdaFixture fixture;
  try {
    fixture.weight = required<int>(doc, "weight");
    fixture.degree = required<int>(doc, "degree");
    fixture.sign = required<int>(doc, "sign");
    fixture.label = doc.value("label", std::string());
    if (doc.contains("tolerance")) fixture.tolerance = parse_decimal(doc.at("tolerance"), "tolerance");
    if (!doc.contains("lambda")) throw MalformedDocument("missing field \"lambda\"");
    for (const json& entry : as_array(doc, "lambda")) {
      if (!entry.is_object() || !entry.contains("s") || !entry.contains("re")) {
        throw MalformedDocument("lambda entries need \"s\" and \"re\"");
      }
      const int s = static_cast<int>(as_integer(entry.at("s"), "lambda s"));
      const Real re = parse_decimal(entry.at("re"), "lambda re");
      const Real im = entry.contains("im") ? parse_decimal(entry.at("im"), "lambda im") : Real(0);
      if (!fixture.values.emplace(s, Complex(re, im)).second) {
        throw MalformedDocument("duplicate lambda entry at s = " + std::to_string(s));
      }
    }
  } catch (const json::exception& e) {
    throw MalformedDocument(std::string("lambda fixture: ") + e.what());
  }
  fixture.validate();
  return fixture;
}

std::string serialize(const LambdaFixture& fixture) {
  json doc;
  if (!fixture.label.empty()) doc["label"] = fixture.label;
  doc["weight"] = fixture.weight;
  doc["degree"] = fixture.degree;
  doc["sign"] = fixture.sign;
  doc["tolerance"] = exact_string(fixture.tolerance);
  json values = json::array();
  for (const auto& [s, v] : fixture.values) {
    values.push_back({{"s", s}, {"re", exact_string(v.real())}, {"im", exact_string(v.imag())}});
  }
  doc["lambda"] = std::move(values);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedDocument("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace pprh::formdata
