#include "btlab/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace btlab {

namespace {

constexpr std::string_view kDigitChars = "0123456789abcdefghijklmnopqrstuvwxyz";

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return -1;
}

int read_int(const nlohmann::json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw InvalidInput(std::string("descriptor key '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

int RamificationIndex::value() const {
  if (infinite_) throw InvalidInput("ramification index is infinite");
  return value_;
}

std::string RamificationIndex::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

FieldDescriptor FieldDescriptor::mixed(int p, int f, int e, int delta, int r) {
  FieldDescriptor d;
  d.p = p;
  d.f = f;
  d.e = RamificationIndex::finite(e);
  d.delta = delta;
  d.r = r;
  return d;
}

FieldDescriptor FieldDescriptor::equal_characteristic(int p, int f, int delta, int r) {
  FieldDescriptor d;
  d.p = p;
  d.f = f;
  d.e = RamificationIndex::infinite();
  d.delta = delta;
  d.r = r;
  return d;
}

std::uint64_t FieldDescriptor::residue_field_size() const {
  return ipow(static_cast<std::uint64_t>(p), f * delta);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::optional<int> coefficient_valuation(const EisensteinCoefficient& c, int p) {
  if (const auto* z = std::get_if<std::int64_t>(&c)) {
    std::int64_t v = *z;
    if (v == 0) return std::nullopt;
    int k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    return k;
  }
  const auto& digits = std::get<DigitVector>(c).digits;
  for (std::size_t k = 0; k < digits.size(); ++k)
    if (digits[k] != 0) return static_cast<int>(k);
  return std::nullopt;
}

std::vector<Violation> validate(const FieldDescriptor& d) {
  std::vector<Violation> out;
  auto add = [&](std::string key, std::string msg) { out.push_back({std::move(key), std::move(msg)}); };

  if (!is_prime(d.p)) add("p_prime", "p not prime (p=" + std::to_string(d.p) + ")");
  if (d.f < 1) add("f_positive", "f must be >= 1");
  if (d.delta < 1) add("delta_positive", "delta must be >= 1");
  if (d.e.is_finite() && d.e.value() < 1) add("e_positive", "e must be >= 1 or infinite");
  if (d.delta >= 1) {
    if (d.r < 0 || d.r >= d.delta) {
      add("r_reduced", "r must be given reduced modulo delta (0 <= r < delta)");
    } else if (std::gcd(d.r, d.delta) != 1) {
      add("r_generator", "r must generate Z/" + std::to_string(d.delta) + "Z");
    }
  }

  if (d.eisenstein) {
    const auto& coeffs = *d.eisenstein;
    if (d.e.is_infinite()) {
      add("eisenstein_finite_e", "an Eisenstein polynomial requires finite e");
    } else if (d.e.value() >= 1 && coeffs.size() != static_cast<std::size_t>(d.e.value())) {
      add("eisenstein_degree", "eisenstein must list exactly e coefficients a_0..a_{e-1}");
    }
    const bool p_ok = is_prime(d.p) && d.f >= 1;
    if (p_ok) {
      const std::uint64_t q = ipow(static_cast<std::uint64_t>(d.p), d.f);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (const auto* dv = std::get_if<DigitVector>(&coeffs[i])) {
          for (int digit : dv->digits)
            if (digit < 0 || static_cast<std::uint64_t>(digit) >= q)
              add("eisenstein_digit", "a_" + std::to_string(i) + " has a digit outside [0, p^f)");
        }
        const auto v = coefficient_valuation(coeffs[i], d.p);
        if (i == 0) {
          if (!v || *v != 1) add("eisenstein_a0", "a_0 must have valuation exactly 1");
        } else if (v && *v < 1) {
          add("eisenstein_ai", "a_" + std::to_string(i) + " must have valuation >= 1");
        }
      }
    }
  }
  return out;
}

std::string encode_digits(const std::vector<int>& digits, std::uint64_t alphabet) {
  std::string out;
  if (alphabet <= kDigitChars.size()) {
    out.reserve(digits.size());
    for (int dgt : digits) out.push_back(kDigitChars.at(static_cast<std::size_t>(dgt)));
    return out;
  }
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out.push_back('.');
    out += std::to_string(digits[i]);
  }
  return out;
}

std::vector<int> decode_digits(std::string_view text, std::uint64_t alphabet) {
  std::vector<int> out;
  if (text.find('.') != std::string_view::npos || alphabet > kDigitChars.size()) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const auto stop = std::min(text.find('.', start), text.size());
      const auto token = text.substr(start, stop - start);
      if (token.empty()) throw InvalidInput("empty digit in digit string '" + std::string(text) + "'");
      int value = 0;
      for (char c : token) {
        if (c < '0' || c > '9') throw InvalidInput("bad digit in '" + std::string(text) + "'");
        value = value * 10 + (c - '0');
      }
      out.push_back(value);
      start = stop + 1;
    }
  } else {
    for (char c : text) {
      const int v = char_digit(c);
      if (v < 0) throw InvalidInput("bad digit '" + std::string(1, c) + "' in '" + std::string(text) + "'");
      out.push_back(v);
    }
  }
  for (int v : out)
    if (v < 0 || static_cast<std::uint64_t>(v) >= alphabet)
      throw InvalidInput("digit " + std::to_string(v) + " out of range in '" + std::string(text) + "'");
  return out;
}

FieldDescriptor descriptor_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw InvalidInput("descriptor must be a JSON object");
  static const std::vector<std::string> known = {"p", "f", "e", "delta", "r", "eisenstein", "name"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidInput("unknown descriptor key '" + key + "'");
  if (!doc.contains("p") || !doc.contains("e")) throw InvalidInput("descriptor requires keys p and e");

  FieldDescriptor d;
  d.p = read_int(doc, "p");
  d.f = doc.contains("f") ? read_int(doc, "f") : 1;
  d.delta = doc.contains("delta") ? read_int(doc, "delta") : 1;
  d.r = doc.contains("r") ? read_int(doc, "r") : 0;

  const auto& e = doc.at("e");
  if (e.is_string()) {
    auto s = e.get<std::string>();
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s != "inf") throw InvalidInput("e must be an integer or \"inf\"");
    d.e = RamificationIndex::infinite();
  } else if (e.is_number_integer()) {
    d.e = RamificationIndex::finite(e.get<int>());
  } else {
    throw InvalidInput("e must be an integer or \"inf\"");
  }

  if (d.delta >= 1 && (d.r < 0 || d.r >= d.delta))
    throw InvalidInput("r=" + std::to_string(d.r) + " is not reduced modulo delta=" + std::to_string(d.delta));

  if (doc.contains("eisenstein")) {
    const auto& arr = doc.at("eisenstein");
    if (!arr.is_array()) throw InvalidInput("eisenstein must be an array");
    if (!is_prime(d.p) || d.f < 1) throw InvalidInput("eisenstein digits need a valid (p, f)");
    const std::uint64_t q = ipow(static_cast<std::uint64_t>(d.p), d.f);
    std::vector<EisensteinCoefficient> coeffs;
    for (const auto& c : arr) {
      if (c.is_number_integer()) {
        coeffs.emplace_back(c.get<std::int64_t>());
      } else if (c.is_string()) {
        coeffs.emplace_back(DigitVector{decode_digits(c.get<std::string>(), q)});
      } else {
        throw InvalidInput("eisenstein coefficients must be integers or digit strings");
      }
    }
    d.eisenstein = std::move(coeffs);
  }

  const auto violations = validate(d);
  if (!violations.empty()) {
    std::string msg = "invalid descriptor:";
    for (const auto& v : violations) msg += " [" + v.invariant + "] " + v.message + ";";
    throw InvalidInput(msg);
  }
  return d;
}

FieldDescriptor parse_descriptor(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw InvalidInput(std::string("malformed descriptor document: ") + err.what());
  }
  return descriptor_from_json(doc);
}

nlohmann::json to_json(const FieldDescriptor& d) {
  nlohmann::json doc;
  doc["p"] = d.p;
  doc["f"] = d.f;
  if (d.e.is_infinite())
    doc["e"] = "inf";
  else
    doc["e"] = d.e.value();
  doc["delta"] = d.delta;
  doc["r"] = d.r;
  if (d.eisenstein) {
    auto arr = nlohmann::json::array();
    const std::uint64_t q = ipow(static_cast<std::uint64_t>(d.p), d.f);
    for (const auto& c : *d.eisenstein) {
      if (const auto* z = std::get_if<std::int64_t>(&c))
        arr.push_back(*z);
      else
        arr.push_back(encode_digits(std::get<DigitVector>(c).digits, q));
    }
    doc["eisenstein"] = std::move(arr);
  }
  return doc;
}

std::string normal_form(const FieldDescriptor& d) { return to_json(d).dump(); }

std::string describe(const FieldDescriptor& d) {
  std::ostringstream os;
  os << "(" << d.p << "," << d.f << "," << d.e.to_string() << "," << d.delta << "," << d.r << ")";
  if (d.eisenstein) os << " with explicit Eisenstein polynomial";
  return os.str();
}

FieldDescriptor positive_char_limit(const FieldDescriptor& d) {
  if (d.e.is_infinite()) throw InvalidInput("positive_char_limit expects a finite ramification index");
  FieldDescriptor out = d;
  out.e = RamificationIndex::infinite();
  out.eisenstein.reset();
  return out;
}

}  // namespace btlab
