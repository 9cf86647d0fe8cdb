#include "wronoc/model.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace wronoc {

namespace {

std::string describe(const RadiusEntry& radius, std::size_t index) {
  std::ostringstream out;
  out << "radius " << radius.id << " resonance #" << index;
  if (index < radius.resonances.size()) {
    out << " (" << radius.resonances[index].nominal_pm << " pm)";
  }
  return out.str();
}

std::string join_messages(const std::vector<Violation>& violations) {
  std::string text = "invalid instance:";
  for (const auto& v : violations) text += "\n  [" + v.rule + "] " + v.message;
  return text;
}

// Cursor over one line of input; columns are 1-based for error reports.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_no)
      : line_(line), line_no_(line_no) {}

  void skip_space() {
    while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' ||
                                   line_[pos_] == '\r')) {
      ++pos_;
    }
  }
  bool at_end() {
    skip_space();
    return pos_ >= line_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  char peek() const { return pos_ < line_.size() ? line_[pos_] : '\0'; }
  std::string_view rest() const { return line_.substr(pos_); }

  std::string_view word() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ' && line_[pos_] != '\t' &&
           line_[pos_] != '\r') {
      ++pos_;
    }
    return line_.substr(start, pos_ - start);
  }

  std::int64_t integer(const char* what) {
    skip_space();
    std::int64_t value = 0;
    const char* first = line_.data() + pos_;
    const char* last = line_.data() + line_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range) {
      fail(std::string(what) + " out of range");
    }
    if (ec != std::errc() || ptr == first) {
      fail(std::string("expected integer ") + what);
    }
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_no_, column(), what);
  }

 private:
  std::string_view line_;
  std::size_t line_no_;
  std::size_t pos_ = 0;
};

struct Builder {
  std::vector<RadiusEntry> radii;
  std::map<RadiusId, std::size_t> first_position;
  std::string label;

  RadiusEntry* find(RadiusId id) {
    auto it = first_position.find(id);
    return it == first_position.end() ? nullptr : &radii[it->second];
  }
  RadiusEntry& declare(RadiusId id, Picometers radius_pm) {
    first_position.try_emplace(id, radii.size());
    radii.push_back(RadiusEntry{id, radius_pm, {}});
    return radii.back();
  }
};

RadiusId to_radius_id(std::int64_t value, const LineScanner& scan) {
  if (value <= 0 || value > std::numeric_limits<RadiusId>::max()) {
    scan.fail("radius id must be a positive 32-bit integer");
  }
  return static_cast<RadiusId>(value);
}

void parse_line(std::string_view line, std::size_t line_no, Builder& builder) {
  LineScanner scan(line, line_no);
  if (scan.at_end()) return;
  const char first = scan.peek();
  if (first == '#') return;
  if (first == '%') {
    // `%!` carries metadata for ASP-fact files; plain `%` is a comment.
    const auto rest = scan.rest();
    if (rest.size() < 2 || rest[1] != '!') return;
    scan.expect('%');
    scan.expect('!');
    const auto keyword = scan.word();
    if (keyword == "radius") {
      const RadiusId id = to_radius_id(scan.integer("radius id"), scan);
      const Picometers radius_pm = scan.integer("radius_pm");
      if (RadiusEntry* existing = builder.find(id);
          existing != nullptr && existing->radius_pm == 0) {
        existing->radius_pm = radius_pm;
      } else {
        builder.declare(id, radius_pm);
      }
    } else if (keyword == "label") {
      scan.skip_space();
      builder.label = std::string(scan.rest());
      while (!builder.label.empty() && builder.label.back() == '\r') {
        builder.label.pop_back();
      }
      return;
    } else {
      return;  // unknown metadata is ignored like any comment
    }
    if (!scan.at_end() && scan.peek() != '%') scan.fail("trailing characters");
    return;
  }

  if (scan.rest().substr(0, 6) == "lambda") {
    // One or more facts per line, optionally followed by a `%` comment.
    while (!scan.at_end() && scan.peek() != '%') {
      if (scan.rest().substr(0, 6) != "lambda") scan.fail("expected lambda/4 fact");
      for (char c : std::string_view("lambda")) scan.expect(c);
      scan.expect('(');
      const RadiusId id = to_radius_id(scan.integer("radius id"), scan);
      scan.expect(',');
      const Picometers lmin = scan.integer("Lmin");
      scan.expect(',');
      const Picometers nominal = scan.integer("Lnominal");
      scan.expect(',');
      const Picometers lmax = scan.integer("Lmax");
      scan.expect(')');
      scan.expect('.');
      RadiusEntry* radius = builder.find(id);
      if (radius == nullptr) radius = &builder.declare(id, 0);
      radius->resonances.push_back(Resonance{nominal, lmin, lmax});
    }
    return;
  }

  const auto keyword = scan.word();
  if (keyword == "radius") {
    const RadiusId id = to_radius_id(scan.integer("radius id"), scan);
    const Picometers radius_pm = scan.integer("radius_pm");
    builder.declare(id, radius_pm);
  } else if (keyword == "resonance") {
    const RadiusId id = to_radius_id(scan.integer("radius id"), scan);
    const Picometers nominal = scan.integer("nominal_pm");
    Picometers lmin = nominal;
    Picometers lmax = nominal;
    if (!scan.at_end() && scan.peek() != '#') {
      lmin = scan.integer("lmin_pm");
      lmax = scan.integer("lmax_pm");
    }
    RadiusEntry* radius = builder.find(id);
    if (radius == nullptr) {
      scan.fail("resonance refers to undeclared radius " + std::to_string(id));
    }
    radius->resonances.push_back(Resonance{nominal, lmin, lmax});
  } else if (keyword == "label") {
    scan.skip_space();
    builder.label = std::string(scan.rest());
    while (!builder.label.empty() && builder.label.back() == '\r') {
      builder.label.pop_back();
    }
    return;
  } else {
    throw ParseError(line_no, 1, "unknown directive '" + std::string(keyword) + "'");
  }
  if (!scan.at_end() && scan.peek() != '#') scan.fail("trailing characters");
}

void normalize(Instance& instance) {
  std::stable_sort(instance.radii.begin(), instance.radii.end(),
                   [](const RadiusEntry& a, const RadiusEntry& b) { return a.id < b.id; });
  for (auto& radius : instance.radii) {
    std::stable_sort(radius.resonances.begin(), radius.resonances.end(),
                     [](const Resonance& a, const Resonance& b) {
                       return a.nominal_pm < b.nominal_pm;
                     });
  }
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

InstanceError::InstanceError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations)) {}

std::size_t Instance::position_of(RadiusId id) const {
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i].id == id) return i;
  }
  throw std::out_of_range("unknown radius id " + std::to_string(id));
}

std::size_t Instance::total_resonances() const {
  std::size_t total = 0;
  for (const auto& r : radii) total += r.resonances.size();
  return total;
}

std::size_t Instance::max_resonances_per_radius() const {
  std::size_t best = 0;
  for (const auto& r : radii) best = std::max(best, r.resonances.size());
  return best;
}

Picometers Instance::min_nominal() const {
  Picometers best = std::numeric_limits<Picometers>::max();
  for (const auto& r : radii) {
    for (const auto& res : r.resonances) best = std::min(best, res.nominal_pm);
  }
  return best;
}

Picometers Instance::max_nominal() const {
  Picometers best = std::numeric_limits<Picometers>::min();
  for (const auto& r : radii) {
    for (const auto& res : r.resonances) best = std::max(best, res.nominal_pm);
  }
  return best;
}

std::vector<Violation> validate(const Instance& instance) {
  std::vector<Violation> out;
  if (instance.radii.empty()) {
    out.push_back({"no radii", "instance declares no radii"});
    return out;
  }
  std::set<RadiusId> seen;
  for (const auto& radius : instance.radii) {
    const std::string name = "radius " + std::to_string(radius.id);
    if (radius.id <= 0) out.push_back({"invalid id", name + ": id must be positive"});
    if (!seen.insert(radius.id).second) {
      out.push_back({"duplicate id", name + " declared more than once"});
    }
    if (radius.radius_pm < 0) {
      out.push_back({"radius", name + ": radius_pm must be non-negative"});
    }
    if (radius.resonances.empty()) {
      out.push_back({"empty radius", name + " has no resonances"});
    }
    for (std::size_t j = 0; j < radius.resonances.size(); ++j) {
      const Resonance& res = radius.resonances[j];
      if (res.lmin_pm <= 0 || res.nominal_pm <= 0 || res.lmax_pm <= 0) {
        out.push_back({"positive", describe(radius, j) + ": wavelengths must be > 0"});
      }
      if (!(res.lmin_pm <= res.nominal_pm && res.nominal_pm <= res.lmax_pm)) {
        out.push_back({"interval", describe(radius, j) + ": requires lmin <= nominal <= lmax"});
      }
      if (j > 0) {
        const Picometers prev = radius.resonances[j - 1].nominal_pm;
        if (prev == res.nominal_pm) {
          out.push_back({"duplicate nominal",
                         describe(radius, j) + " repeats the previous nominal value"});
        } else if (prev > res.nominal_pm) {
          out.push_back({"ordering", describe(radius, j) + " is not ascending"});
        }
      }
    }
  }
  return out;
}

Instance apply_delta_policy(const Instance& instance, const DeltaPolicy& policy) {
  Instance out = instance;
  if (policy.mode == DeltaPolicy::Mode::kSymmetricHalfWidth) {
    if (policy.half_width_pm < 0) {
      throw std::invalid_argument("half width must be non-negative");
    }
    for (auto& radius : out.radii) {
      for (auto& res : radius.resonances) {
        res.lmin_pm = res.nominal_pm - policy.half_width_pm;
        res.lmax_pm = res.nominal_pm + policy.half_width_pm;
      }
    }
  }
  return out;
}

Instance parse_instance(std::string_view text, const DeltaPolicy& policy) {
  Builder builder;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    parse_line(text.substr(start, end - start), line_no, builder);
    start = end + 1;
  }
  Instance instance{std::move(builder.radii), std::move(builder.label)};
  normalize(instance);
  instance = apply_delta_policy(instance, policy);
  if (auto violations = validate(instance); !violations.empty()) {
    throw InstanceError(std::move(violations));
  }
  return instance;
}

Instance parse_instance(std::istream& in, const DeltaPolicy& policy) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_instance(std::string_view(text), policy);
}

Instance load_instance(const std::string& path, const DeltaPolicy& policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_instance(in, policy);
}

std::string export_asp_facts(const Instance& instance) {
  std::vector<const RadiusEntry*> order;
  for (const auto& r : instance.radii) order.push_back(&r);
  std::stable_sort(order.begin(), order.end(),
                   [](const RadiusEntry* a, const RadiusEntry* b) { return a->id < b->id; });
  std::ostringstream out;
  if (!instance.label.empty()) out << "%! label " << instance.label << '\n';
  for (const RadiusEntry* r : order) {
    if (r->radius_pm != 0) out << "%! radius " << r->id << ' ' << r->radius_pm << '\n';
  }
  for (const RadiusEntry* r : order) {
    for (const auto& res : r->resonances) {
      out << "lambda(" << r->id << ',' << res.lmin_pm << ',' << res.nominal_pm << ','
          << res.lmax_pm << ").\n";
    }
  }
  return out.str();
}

std::string write_canonical(const Instance& instance) {
  std::ostringstream out;
  if (!instance.label.empty()) out << "label " << instance.label << '\n';
  out << "# radius <id> <radius_pm>\n"
      << "# resonance <radius_id> <nominal_pm> <lmin_pm> <lmax_pm>\n";
  for (const auto& r : instance.radii) {
    out << "radius " << r.id << ' ' << r.radius_pm << '\n';
    for (const auto& res : r.resonances) {
      out << "resonance " << r.id << ' ' << res.nominal_pm;
      if (res.lmin_pm != res.nominal_pm || res.lmax_pm != res.nominal_pm) {
        out << ' ' << res.lmin_pm << ' ' << res.lmax_pm;
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string instance_digest(const Instance& instance) {
  const std::string text = export_asp_facts(instance);
  unsigned char hash[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(text.data(), text.size(), hash, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::ostringstream out;
  out << "sha256:" << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < length; ++i) out << std::setw(2) << static_cast<int>(hash[i]);
  return out.str();
}

}  // namespace wronoc
