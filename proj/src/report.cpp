#include "webrank/report.hpp"

#include <sstream>

namespace webrank {

nlohmann::json ReportEnvelope::to_json() const {
  nlohmann::json j;
  j["tool_version"] = tool_version;
  j["invocation"] = {{"subcommand", subcommand}, {"arguments", arguments}};
  j["mode"] = field_to_json(mode);
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["timings"] = elapsed_seconds ? nlohmann::json{{"total_seconds", *elapsed_seconds}} : nlohmann::json(nullptr);
  j["payload"] = payload;
  return j;
}

ReportEnvelope ReportEnvelope::from_json(const nlohmann::json& j) {
  ReportEnvelope env;
  try {
    env.tool_version = j.at("tool_version").get<std::string>();
    env.subcommand = j.at("invocation").at("subcommand").get<std::string>();
    env.arguments = j.at("invocation").at("arguments").get<std::vector<std::string>>();
    env.mode = field_from_json(j.at("mode"));
    if (!j.at("seed").is_null()) env.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("timings").is_null()) env.elapsed_seconds = j.at("timings").at("total_seconds").get<double>();
    env.payload = j.at("payload");
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Validation, std::string("malformed report envelope: ") + e.what());
  }
  return env;
}

namespace {

void flatten_text(const nlohmann::json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    return;
  }
  if (j.is_array()) {
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && !v.is_structured();
    if (scalars) {
      out << prefix << ": ";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << "\n";
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) flatten_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
}

}  // namespace

std::string emit_report(const ReportEnvelope& env, ReportFormat format) {
  if (format == ReportFormat::Json) return env.to_json().dump(2) + "\n";
  std::ostringstream out;
  out << "webrank " << env.tool_version << " " << env.subcommand << " ("
      << (env.mode.exact() ? std::string("exact") : "float, " + std::to_string(env.mode.precision_bits) + " bits")
      << ")\n";
  flatten_text(env.payload, "", out);
  return out.str();
}

nlohmann::json rank_payload(const RankReport& r) {
  nlohmann::json dims = nlohmann::json::array();
  for (const auto& [order, dim] : r.kernel_dims) dims.push_back({{"order", order}, {"dim", dim}});
  nlohmann::json j;
  j["k"] = r.k;
  j["rank"] = r.rank;
  j["bol_bound"] = r.bol_bound;
  j["is_maximal"] = r.is_maximal;
  j["stabilized"] = r.stabilized;
  j["kernel_dims"] = dims;
  j["mode"] = field_to_json(r.mode);
  j["gap"] = r.gap ? nlohmann::json(*r.gap) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json theorem1_payload(const Theorem1Report& r) {
  nlohmann::json j;
  j["web"] = rank_payload(r.base);
  j["with_fx"] = rank_payload(r.extended);
  j["delta"] = r.delta;
  j["expected_delta"] = r.expected_delta;
  j["holds"] = r.holds;
  j["maximality_agrees"] = r.maximality_agrees;
  return j;
}

template <class F>
nlohmann::json spectrum_payload(const StructuredBasis<F>& basis, int rank) {
  const LieOperator<F>& op = basis.op;
  nlohmann::json eig = nlohmann::json::array();
  for (const Eigenvalue& e : op.eigenvalues) {
    nlohmann::json item;
    item["eigenvalue"] = e.text;
    item["algebraic_multiplicity"] = e.multiplicity;
    item["exact"] = e.rational.has_value();
    nlohmann::json example = nullptr;
    for (const auto& rel : basis.relations)
      if (rel.eigenvalue.text == e.text) {
        example = rel.text();
        break;
      }
    item["example_relation"] = example;
    auto md = basis.max_degree.find(e.text);
    item["max_degree"] = md == basis.max_degree.end() ? nlohmann::json(nullptr) : nlohmann::json(md->second);
    if (e.factor) item["minimal_factor"] = render_poly(*e.factor, "t");
    eig.push_back(item);
  }
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& rel : basis.relations) rels.push_back(rel.text());
  nlohmann::json j;
  j["rank"] = rank;
  j["charpoly"] = render_poly(op.charpoly, "t");
  j["eigenvalues"] = eig;
  j["zero_block_dim"] = op.zero_block_dim;
  j["nonzero_block_dim"] = op.nonzero_block_dim;
  j["nilpotent_zero_block"] = op.nilpotent_zero_block;
  j["nilpotency_index"] = op.nilpotency_index;
  j["structured_relations"] = rels;
  j["structured_complete"] = basis.complete;
  return j;
}

template nlohmann::json spectrum_payload(const StructuredBasis<Rational>&, int);
template nlohmann::json spectrum_payload(const StructuredBasis<BigFloat>&, int);

}  // namespace webrank
