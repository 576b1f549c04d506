#include "geuler/plan_io.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace geuler {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson mass_to_json(const Rat& mass) { return format_rational(mass); }
OrderedJson mass_to_json(double mass) { return mass; }

Rat mass_from_json(const OrderedJson& value, const Rat*) {
  if (value.is_string()) {
    return parse_rational(value.get<std::string>());
  }
  if (value.is_number_integer()) {
    return Rat(value.get<long long>());
  }
  throw std::runtime_error("plan JSON: rational mass must be a \"p/q\" string, got " +
                           value.dump());
}

double mass_from_json(const OrderedJson& value, const double*) {
  if (value.is_number()) {
    return value.get<double>();
  }
  if (value.is_string()) {
    return to_double(parse_rational(value.get<std::string>()));
  }
  throw std::runtime_error("plan JSON: float mass must be a number, got " + value.dump());
}

std::vector<Rat> rationals_from_json(const OrderedJson& array, const char* what) {
  if (!array.is_array()) {
    throw std::runtime_error(std::string("plan JSON: ") + what + " must be an array");
  }
  std::vector<Rat> values;
  values.reserve(array.size());
  for (const auto& entry : array) {
    if (entry.is_string()) {
      values.push_back(parse_rational(entry.get<std::string>()));
    } else if (entry.is_number_integer()) {
      values.push_back(Rat(entry.get<long long>()));
    } else {
      throw std::runtime_error(std::string("plan JSON: ") + what +
                               " entries must be rational strings");
    }
  }
  return values;
}

OrderedJson parse_document(const std::string& text) {
  // Exceptions from the parser carry the byte offset of the problem.
  return OrderedJson::parse(text);
}

}  // namespace

template <class S>
std::string plan_to_json_string(const TransportPlan<S>& plan, int indent) {
  OrderedJson doc;
  doc["grid"] = OrderedJson::array();
  for (const Rat& p : plan.grid().points()) {
    doc["grid"].push_back(format_rational(p));
  }
  doc["times"] = OrderedJson::array();
  for (const Rat& t : plan.timegrid().times()) {
    doc["times"].push_back(format_rational(t));
  }
  doc["arith"] = ScalarOps<S>::mode_name();
  doc["form"] = plan.form() == PlanForm::kFull ? "full" : "reduced";
  doc["atoms"] = OrderedJson::array();
  for (const auto& atom : plan.atoms()) {
    OrderedJson entry;
    entry["path"] = atom.path.indices;
    entry["mass"] = mass_to_json(atom.mass);
    doc["atoms"].push_back(std::move(entry));
  }
  return doc.dump(indent) + "\n";
}

template <class S>
TransportPlan<S> plan_from_json_string(const std::string& text) {
  const OrderedJson doc = parse_document(text);
  if (!doc.is_object()) {
    throw std::runtime_error("plan JSON: document must be an object");
  }
  for (const char* key : {"grid", "times", "arith", "atoms"}) {
    if (!doc.contains(key)) {
      throw std::runtime_error(std::string("plan JSON: missing key \"") + key + "\"");
    }
  }
  const std::string arith = doc["arith"].get<std::string>();
  if (arith != ScalarOps<S>::mode_name()) {
    throw std::runtime_error("plan JSON: arithmetic mode \"" + arith +
                             "\" does not match the requested \"" +
                             ScalarOps<S>::mode_name() + "\" load");
  }
  SpatialGrid grid(rationals_from_json(doc["grid"], "grid"));
  TimeGrid timegrid(rationals_from_json(doc["times"], "times"));
  PlanForm form = PlanForm::kFull;
  if (doc.contains("form")) {
    const std::string name = doc["form"].get<std::string>();
    if (name == "reduced") {
      form = PlanForm::kReduced;
    } else if (name != "full") {
      throw std::runtime_error("plan JSON: unknown form \"" + name + "\"");
    }
  }
  typename TransportPlan<S>::Builder builder(std::move(grid), std::move(timegrid), form);
  if (!doc["atoms"].is_array()) {
    throw std::runtime_error("plan JSON: atoms must be an array");
  }
  for (const auto& entry : doc["atoms"]) {
    if (!entry.is_object() || !entry.contains("path") || !entry.contains("mass")) {
      throw std::runtime_error("plan JSON: each atom needs \"path\" and \"mass\"");
    }
    DiscretePath path;
    for (const auto& idx : entry["path"]) {
      if (!idx.is_number_integer()) {
        throw std::runtime_error("plan JSON: path entries must be integers");
      }
      path.indices.push_back(idx.get<std::int32_t>());
    }
    builder.add(std::move(path), mass_from_json(entry["mass"], static_cast<const S*>(nullptr)));
  }
  return std::move(builder).build();
}

template <class S>
void save_plan(const TransportPlan<S>& plan, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_plan: cannot open " + path.string() + " for writing");
  }
  out << plan_to_json_string(plan);
  if (!out) {
    throw std::runtime_error("save_plan: write to " + path.string() + " failed");
  }
}

template <class S>
TransportPlan<S> load_plan(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_plan: cannot open " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return plan_from_json_string<S>(text);
}

std::string sqrt3_to_json_string(const Sqrt3Rat& value) {
  OrderedJson doc;
  doc["rat"] = format_rational(value.rat);
  doc["sqrt3"] = format_rational(value.root3);
  return doc.dump();
}

Sqrt3Rat sqrt3_from_json_string(const std::string& text) {
  const OrderedJson doc = parse_document(text);
  if (!doc.is_object() || !doc.contains("rat") || !doc.contains("sqrt3")) {
    throw std::runtime_error("sqrt3 JSON: expected {\"rat\": ..., \"sqrt3\": ...}");
  }
  return Sqrt3Rat(parse_rational(doc["rat"].get<std::string>()),
                  parse_rational(doc["sqrt3"].get<std::string>()));
}

template <class S>
std::string lp_to_json_string(const MmotLp<S>& lp, int indent) {
  OrderedJson doc;
  doc["rows"] = lp.row_count;
  doc["cols"] = lp.cols();
  doc["form"] = lp.form == PlanForm::kFull ? "full" : "reduced";
  doc["cost"] = to_string(lp.cost.kind);
  doc["arith"] = ScalarOps<S>::mode_name();
  doc["grid"] = OrderedJson::array();
  for (const Rat& p : lp.grid.points()) {
    doc["grid"].push_back(format_rational(p));
  }
  doc["times"] = OrderedJson::array();
  for (const Rat& t : lp.timegrid.times()) {
    doc["times"].push_back(format_rational(t));
  }
  doc["endpoint"] = OrderedJson::array();
  for (std::size_t i = 0; i < lp.endpoint.size(); ++i) {
    doc["endpoint"].push_back(lp.endpoint.apply(static_cast<std::int32_t>(i)));
  }
  doc["objective"] = OrderedJson::array();
  for (const S& c : lp.objective) {
    doc["objective"].push_back(mass_to_json(c));
  }
  doc["rhs"] = OrderedJson::array();
  for (const S& b : lp.rhs) {
    doc["rhs"].push_back(mass_to_json(b));
  }
  doc["entries"] = OrderedJson::array();
  for (std::size_t j = 0; j < lp.cols(); ++j) {
    for (std::uint32_t r : lp.column_rows[j]) {
      doc["entries"].push_back(OrderedJson::array({r, j, 1}));
    }
  }
  doc["columns"] = OrderedJson::array();
  for (const auto& path : lp.columns) {
    doc["columns"].push_back(path.indices);
  }
  return doc.dump(indent) + "\n";
}

template std::string plan_to_json_string<Rat>(const TransportPlan<Rat>&, int);
template std::string plan_to_json_string<double>(const TransportPlan<double>&, int);
template TransportPlan<Rat> plan_from_json_string<Rat>(const std::string&);
template TransportPlan<double> plan_from_json_string<double>(const std::string&);
template void save_plan<Rat>(const TransportPlan<Rat>&, const std::filesystem::path&);
template void save_plan<double>(const TransportPlan<double>&, const std::filesystem::path&);
template TransportPlan<Rat> load_plan<Rat>(const std::filesystem::path&);
template TransportPlan<double> load_plan<double>(const std::filesystem::path&);
template std::string lp_to_json_string<Rat>(const MmotLp<Rat>&, int);
template std::string lp_to_json_string<double>(const MmotLp<double>&, int);

}  // namespace geuler
