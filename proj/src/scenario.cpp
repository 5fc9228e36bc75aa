// Copyright 2026 The valuebid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "valuebid/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <string_view>
#include <utility>

#include "json.hpp"
#include "valuebid/errors.hpp"

namespace valuebid {
namespace {

// Longest decimal expansion the serializer will attempt before falling
// back to a fraction string.
constexpr int kMaxSerializedDecimals = 64;

// Largest base-10 exponent accepted in a number token.
constexpr int kMaxExponent = 4096;

// A JSON value with numbers kept as their source tokens. Going through
// the usual double-valued DOM would round 10.1 to the nearest double; the
// whole point of the scenario format is that it does not.
struct JsonValue {
  enum class Kind { kNull, kBool, kNumber, kString, kArray, kObject };

  Kind kind = Kind::kNull;
  bool flag = false;
  std::string text;  // number token or string payload
  std::vector<JsonValue> elements;
  std::vector<std::pair<std::string, JsonValue>> members;

  const JsonValue* Find(const std::string& name) const {
    for (const auto& [key, value] : members) {
      if (key == name) return &value;
    }
    return nullptr;
  }
};

std::string TrimDiagnostic(std::string message) {
  if (!message.empty() && message.front() == '[') {
    const auto end = message.find("] ");
    if (end != std::string::npos) message.erase(0, end + 2);
  }
  return message;
}

// SAX consumer building the token-preserving tree. Only the ancestors of
// the node under construction are ever pointed to from the stack, and a
// parent's child vector cannot grow while one of its children is open, so
// the stored pointers stay valid.
class TokenReader final : public nlohmann::json::json_sax_t {
 public:
  JsonValue Take() { return std::move(root_); }

  bool null() override { return Add(JsonValue{}); }

  bool boolean(bool value) override {
    JsonValue node;
    node.kind = JsonValue::Kind::kBool;
    node.flag = value;
    return Add(std::move(node));
  }

  bool number_integer(number_integer_t value) override {
    return Add(Number(std::to_string(value)));
  }

  bool number_unsigned(number_unsigned_t value) override {
    return Add(Number(std::to_string(value)));
  }

  bool number_float(number_float_t, const string_t& token) override {
    return Add(Number(token));
  }

  bool string(string_t& value) override {
    JsonValue node;
    node.kind = JsonValue::Kind::kString;
    node.text = value;
    return Add(std::move(node));
  }

  bool binary(binary_t&) override {
    throw ParseError("scenario", "binary payloads are not part of the format");
  }

  bool start_object(std::size_t) override {
    return Open(JsonValue::Kind::kObject);
  }

  bool key(string_t& name) override {
    pending_key_ = name;
    return true;
  }

  bool end_object() override { return Close(); }

  bool start_array(std::size_t) override {
    return Open(JsonValue::Kind::kArray);
  }

  bool end_array() override { return Close(); }

  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception& error) override {
    throw ParseError("scenario", TrimDiagnostic(error.what()));
  }

 private:
  static JsonValue Number(std::string token) {
    JsonValue node;
    node.kind = JsonValue::Kind::kNumber;
    node.text = std::move(token);
    return node;
  }

  bool Add(JsonValue value) {
    if (stack_.empty()) {
      root_ = std::move(value);
      return true;
    }
    JsonValue& top = *stack_.back();
    if (top.kind == JsonValue::Kind::kArray) {
      top.elements.push_back(std::move(value));
    } else {
      top.members.emplace_back(std::move(pending_key_), std::move(value));
    }
    return true;
  }

  bool Open(JsonValue::Kind kind) {
    JsonValue node;
    node.kind = kind;
    if (stack_.empty()) {
      root_ = std::move(node);
      stack_.push_back(&root_);
      return true;
    }
    JsonValue& top = *stack_.back();
    if (top.kind == JsonValue::Kind::kArray) {
      top.elements.push_back(std::move(node));
      stack_.push_back(&top.elements.back());
    } else {
      top.members.emplace_back(std::move(pending_key_), std::move(node));
      stack_.push_back(&top.members.back().second);
    }
    return true;
  }

  bool Close() {
    stack_.pop_back();
    return true;
  }

  JsonValue root_;
  std::vector<JsonValue*> stack_;
  std::string pending_key_;
};

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ParseError(path, what);
}

void Check(const JsonValue& node, JsonValue::Kind kind, const char* expected,
           const std::string& path) {
  if (node.kind != kind) Fail(path, std::string("expected ") + expected);
}

const JsonValue& Need(const JsonValue& object, const std::string& key,
                      const std::string& path) {
  const JsonValue* found = object.Find(key);
  if (found == nullptr) Fail(path, "missing required field '" + key + "'");
  return *found;
}

void CheckFields(const JsonValue& object,
                 std::initializer_list<std::string_view> allowed,
                 const std::string& path) {
  std::set<std::string> seen;
  for (const auto& [key, value] : object.members) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      Fail(path, "unknown field '" + key + "'");
    }
    if (!seen.insert(key).second) Fail(path, "duplicate field '" + key + "'");
  }
}

Rat RatFromNumberToken(const std::string& token) {
  const auto marker = token.find_first_of("eE");
  if (marker == std::string::npos) return Rat::FromDecimal(token);
  const Rat mantissa = Rat::FromDecimal(token.substr(0, marker));
  std::string_view digits(token);
  digits.remove_prefix(marker + 1);
  bool negative = false;
  if (!digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  int exponent = 0;
  const auto [end, status] =
      std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
  if (status != std::errc{} || end != digits.data() + digits.size() ||
      exponent > kMaxExponent) {
    throw ParseError("exponent out of range in '" + token + "'");
  }
  Rat scale(1);
  for (int i = 0; i < exponent; ++i) scale *= Rat(10);
  return negative ? mantissa / scale : mantissa * scale;
}

Rat DecodeRat(const JsonValue& node, const std::string& path) {
  if (node.kind != JsonValue::Kind::kNumber &&
      node.kind != JsonValue::Kind::kString) {
    Fail(path, "expected a number");
  }
  try {
    return node.kind == JsonValue::Kind::kNumber
               ? RatFromNumberToken(node.text)
               : Rat::FromString(node.text);
  } catch (const ParseError& error) {
    Fail(path, error.what());
  }
}

long long DecodeInt(const JsonValue& node, const std::string& path) {
  if (node.kind != JsonValue::Kind::kNumber) Fail(path, "expected an integer");
  long long value = 0;
  const auto [end, status] = std::from_chars(
      node.text.data(), node.text.data() + node.text.size(), value);
  if (status != std::errc{} || end != node.text.data() + node.text.size()) {
    Fail(path, "expected an integer, got '" + node.text + "'");
  }
  return value;
}

std::uint64_t DecodeSeed(const JsonValue& node, const std::string& path) {
  if (node.kind != JsonValue::Kind::kNumber) {
    Fail(path, "expected a nonnegative integer");
  }
  std::uint64_t value = 0;
  const auto [end, status] = std::from_chars(
      node.text.data(), node.text.data() + node.text.size(), value);
  if (status != std::errc{} || end != node.text.data() + node.text.size()) {
    Fail(path, "expected a nonnegative 64-bit integer, got '" + node.text +
                   "'");
  }
  return value;
}

ItemSpace DecodeItems(const JsonValue& node, const std::string& path) {
  Check(node, JsonValue::Kind::kObject, "an object", path);
  CheckFields(node, {"multiunit", "heterogeneous"}, path);
  const JsonValue* units = node.Find("multiunit");
  const JsonValue* names = node.Find("heterogeneous");
  if ((units != nullptr) == (names != nullptr)) {
    Fail(path, "exactly one of 'multiunit' or 'heterogeneous' is required");
  }
  if (units != nullptr) {
    // Clamp before the narrowing cast so absurd counts cannot wrap into
    // the accepted range; the ItemSpace limit check supplies the message.
    const long long count = std::clamp<long long>(
        DecodeInt(*units, path + ".multiunit"),
        std::numeric_limits<int>::min(), std::numeric_limits<int>::max());
    try {
      return ItemSpace::MultiUnit(static_cast<int>(count));
    } catch (const Error& error) {
      Fail(path + ".multiunit", error.what());
    }
  }
  Check(*names, JsonValue::Kind::kArray, "an array of item names",
        path + ".heterogeneous");
  std::vector<std::string> items;
  items.reserve(names->elements.size());
  for (std::size_t j = 0; j < names->elements.size(); ++j) {
    const std::string at = path + ".heterogeneous[" + std::to_string(j) + "]";
    Check(names->elements[j], JsonValue::Kind::kString, "an item name", at);
    items.push_back(names->elements[j].text);
  }
  try {
    return ItemSpace::Heterogeneous(std::move(items));
  } catch (const Error& error) {
    Fail(path + ".heterogeneous", error.what());
  }
}

Bundle DecodeBundle(const ItemSpace& space, const JsonValue& node,
                    const std::string& path) {
  if (space.IsMultiUnit()) {
    const long long count = DecodeInt(node, path);
    if (count < 0 || count > space.size()) {
      Fail(path, "unit count " + node.text + " outside [0, " +
                     std::to_string(space.size()) + "]");
    }
    return space.Units(static_cast<int>(count));
  }
  Check(node, JsonValue::Kind::kArray, "an array of item names", path);
  std::vector<std::string> items;
  items.reserve(node.elements.size());
  for (std::size_t j = 0; j < node.elements.size(); ++j) {
    const std::string at = path + "[" + std::to_string(j) + "]";
    Check(node.elements[j], JsonValue::Kind::kString, "an item name", at);
    items.push_back(node.elements[j].text);
  }
  try {
    return space.Items(items);
  } catch (const Error& error) {
    Fail(path, error.what());
  }
}

Valuation DecodeBidder(const ItemSpace& space, const JsonValue& node,
                       const std::string& path) {
  Check(node, JsonValue::Kind::kObject, "an object", path);
  CheckFields(node, {"atoms", "budget"}, path);
  const JsonValue& atom_list = Need(node, "atoms", path);
  Check(atom_list, JsonValue::Kind::kArray, "an array", path + ".atoms");
  std::vector<Atom> atoms;
  atoms.reserve(atom_list.elements.size());
  for (std::size_t j = 0; j < atom_list.elements.size(); ++j) {
    const std::string at = path + ".atoms[" + std::to_string(j) + "]";
    const JsonValue& pair = atom_list.elements[j];
    if (pair.kind != JsonValue::Kind::kArray || pair.elements.size() != 2) {
      Fail(at, "expected a [bundle, value] pair");
    }
    atoms.push_back({DecodeBundle(space, pair.elements[0], at + "[0]"),
                     DecodeRat(pair.elements[1], at + "[1]")});
  }
  std::optional<Rat> budget;
  if (const JsonValue* cap = node.Find("budget")) {
    budget = DecodeRat(*cap, path + ".budget");
  }
  try {
    return Valuation(space, std::move(atoms), std::move(budget));
  } catch (const DomainError& error) {
    Fail(path, error.what());
  }
}

std::string Quote(const std::string& text) {
  return nlohmann::json(text).dump();
}

// Shortest exact decimal for `value`, or a quoted fraction when the
// denominator has a prime factor other than 2 and 5.
std::string ExactNumberToken(const Rat& value) {
  if (value.IsInteger()) return value.ToString();
  Rat scaled = value;
  int digits = 0;
  while (digits < kMaxSerializedDecimals && !scaled.IsInteger()) {
    scaled *= Rat(10);
    ++digits;
  }
  if (!scaled.IsInteger()) return Quote(value.ToString());
  std::string rendered = scaled.ToString();
  const bool negative = rendered.front() == '-';
  std::string magnitude = negative ? rendered.substr(1) : rendered;
  if (static_cast<int>(magnitude.size()) <= digits) {
    magnitude.insert(0, digits + 1 - magnitude.size(), '0');
  }
  magnitude.insert(magnitude.size() - digits, ".");
  return (negative ? "-" : "") + magnitude;
}

std::string BundleToken(const ItemSpace& space, const Bundle& bundle) {
  if (space.IsMultiUnit()) return std::to_string(bundle.Count());
  std::string out = "[";
  bool first = true;
  for (int j = 0; j < space.size(); ++j) {
    if (!(bundle.raw() >> j & 1)) continue;
    if (!first) out += ", ";
    out += Quote(space.names()[j]);
    first = false;
  }
  return out + "]";
}

}  // namespace

Scenario ParseScenario(const std::string& text) {
  TokenReader reader;
  nlohmann::json::sax_parse(text, &reader);
  const JsonValue root = reader.Take();
  Check(root, JsonValue::Kind::kObject, "a top-level object", "scenario");
  CheckFields(root,
              {"items", "bidders", "psb", "epsilon", "seed",
               "partition_labels"},
              "scenario");

  const ItemSpace space = DecodeItems(Need(root, "items", "scenario"),
                                      "items");
  const JsonValue& bidder_list = Need(root, "bidders", "scenario");
  Check(bidder_list, JsonValue::Kind::kArray, "an array", "bidders");
  if (bidder_list.elements.empty()) {
    Fail("bidders", "at least one bidder is required");
  }
  std::vector<Valuation> valuations;
  valuations.reserve(bidder_list.elements.size());
  for (std::size_t i = 0; i < bidder_list.elements.size(); ++i) {
    valuations.push_back(DecodeBidder(space, bidder_list.elements[i],
                                      "bidders[" + std::to_string(i) + "]"));
  }

  std::optional<int> psb;
  if (const JsonValue* node = root.Find("psb")) {
    const long long index = DecodeInt(*node, "psb");
    if (index < 0 || index >= static_cast<long long>(valuations.size())) {
      Fail("psb", "bidder index " + node->text + " out of range");
    }
    psb = static_cast<int>(index);
  }

  std::optional<Rat> epsilon;
  if (const JsonValue* node = root.Find("epsilon")) {
    epsilon = DecodeRat(*node, "epsilon");
  }

  std::optional<std::uint64_t> seed;
  if (const JsonValue* node = root.Find("seed")) {
    seed = DecodeSeed(*node, "seed");
  }

  std::optional<std::vector<PartitionLabel>> labels;
  if (const JsonValue* node = root.Find("partition_labels")) {
    Check(*node, JsonValue::Kind::kArray, "an array of labels",
          "partition_labels");
    if (node->elements.size() != valuations.size()) {
      Fail("partition_labels", "expected one label per bidder");
    }
    std::vector<PartitionLabel> parsed;
    parsed.reserve(node->elements.size());
    for (std::size_t i = 0; i < node->elements.size(); ++i) {
      const std::string at = "partition_labels[" + std::to_string(i) + "]";
      Check(node->elements[i], JsonValue::Kind::kString, "a label", at);
      try {
        parsed.push_back(PartitionLabelFromString(node->elements[i].text));
      } catch (const ParseError& error) {
        Fail(at, error.what());
      }
    }
    labels = std::move(parsed);
  }

  // A false psb claim keeps its PreconditionError so the CLI reports a
  // violated contract rather than a malformed file.
  try {
    return Scenario{Market(space, std::move(valuations), psb),
                    std::move(epsilon), seed, std::move(labels)};
  } catch (const DomainError& error) {
    Fail("scenario", error.what());
  }
}

Scenario LoadScenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open scenario file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return ParseScenario(buffer.str());
  } catch (const ParseError& error) {
    throw ParseError(path, error.what());
  }
}

std::string SerializeScenario(const Scenario& scenario) {
  const Market& market = scenario.market;
  const ItemSpace& space = market.items();
  std::ostringstream out;
  out << "{\n  \"items\": ";
  if (space.IsMultiUnit()) {
    out << "{\"multiunit\": " << space.size() << "},\n";
  } else {
    out << "{\"heterogeneous\": [";
    for (int j = 0; j < space.size(); ++j) {
      if (j > 0) out << ", ";
      out << Quote(space.names()[j]);
    }
    out << "]},\n";
  }
  out << "  \"bidders\": [\n";
  for (int i = 0; i < market.bidders(); ++i) {
    const Valuation& valuation = market.valuation(i);
    out << "    {\"atoms\": [";
    for (std::size_t j = 0; j < valuation.atoms().size(); ++j) {
      if (j > 0) out << ", ";
      const Atom& atom = valuation.atoms()[j];
      out << "[" << BundleToken(space, atom.bundle) << ", "
          << ExactNumberToken(atom.value) << "]";
    }
    out << "]";
    if (valuation.budget()) {
      out << ", \"budget\": " << ExactNumberToken(*valuation.budget());
    }
    out << "}" << (i + 1 < market.bidders() ? "," : "") << "\n";
  }
  out << "  ]";
  if (market.psb()) out << ",\n  \"psb\": " << *market.psb();
  if (scenario.epsilon) {
    out << ",\n  \"epsilon\": " << ExactNumberToken(*scenario.epsilon);
  }
  if (scenario.seed) out << ",\n  \"seed\": " << *scenario.seed;
  if (scenario.partition_labels) {
    out << ",\n  \"partition_labels\": [";
    for (std::size_t i = 0; i < scenario.partition_labels->size(); ++i) {
      if (i > 0) out << ", ";
      out << Quote(ToString((*scenario.partition_labels)[i]));
    }
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

std::string ScenarioDigest(const Scenario& scenario) {
  const std::string canonical = SerializeScenario(scenario);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (const unsigned char byte : canonical) {
    hash ^= byte;
    hash *= 0x00000100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

}  // namespace valuebid
