#include "qae_cli/config.hpp"

#include <set>

#include "qae/errors.hpp"
#include "qae_cli/toml.hpp"

namespace qae::cli {

namespace {

class SectionReader {
 public:
  SectionReader(const TomlTable& table, const std::string& section)
      : section_(section) {
    auto it = table.find(section);
    if (it != table.end()) entries_ = &it->second;
  }

  bool has(const std::string& key) const {
    return entries_ != nullptr && entries_->contains(key);
  }

  template <typename T>
  std::optional<T> get(const std::string& key) {
    if (!has(key)) return std::nullopt;
    seen_.insert(key);
    const TomlValue& v = entries_->at(key);
    if constexpr (std::is_same_v<T, double>) {
      if (auto* d = std::get_if<double>(&v.data)) return *d;
      if (auto* i = std::get_if<std::int64_t>(&v.data))
        return static_cast<double>(*i);
    } else if constexpr (std::is_same_v<T, std::int64_t>) {
      if (auto* i = std::get_if<std::int64_t>(&v.data)) return *i;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (auto* b = std::get_if<bool>(&v.data)) return *b;
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (auto* s = std::get_if<std::string>(&v.data)) return *s;
    }
    throw ConfigError("config key [" + section_ + "] " + key +
                      " has the wrong type");
  }

  template <typename T>
  T require(const std::string& key) {
    auto v = get<T>(key);
    if (!v)
      throw ConfigError("config key [" + section_ + "] " + key +
                        " is required");
    return *v;
  }

  std::vector<double> get_double_array(const std::string& key) {
    if (!has(key)) return {};
    seen_.insert(key);
    const TomlValue& v = entries_->at(key);
    if (!v.is_array())
      throw ConfigError("config key [" + section_ + "] " + key +
                        " must be an array");
    std::vector<double> out;
    for (const TomlValue& e : std::get<TomlArray>(v.data)) {
      if (auto* d = std::get_if<double>(&e.data))
        out.push_back(*d);
      else if (auto* i = std::get_if<std::int64_t>(&e.data))
        out.push_back(static_cast<double>(*i));
      else
        throw ConfigError("config key [" + section_ + "] " + key +
                          " must contain numbers");
    }
    return out;
  }

  std::vector<std::string> get_string_array(const std::string& key) {
    if (!has(key)) return {};
    seen_.insert(key);
    const TomlValue& v = entries_->at(key);
    if (!v.is_array())
      throw ConfigError("config key [" + section_ + "] " + key +
                        " must be an array");
    std::vector<std::string> out;
    for (const TomlValue& e : std::get<TomlArray>(v.data)) {
      if (auto* s = std::get_if<std::string>(&e.data))
        out.push_back(*s);
      else
        throw ConfigError("config key [" + section_ + "] " + key +
                          " must contain strings");
    }
    return out;
  }

  void reject_unknown() const {
    if (entries_ == nullptr) return;
    for (const auto& [key, value] : *entries_)
      if (!seen_.contains(key))
        throw ConfigError("unknown config key [" + section_ + "] " + key);
  }

 private:
  std::string section_;
  const std::map<std::string, TomlValue>* entries_ = nullptr;
  std::set<std::string> seen_;
};

int system_qubits(const std::string& system) {
  if (system == "h2" || system == "hubbard2x1") return 4;
  if (system == "h4" || system == "hubbard2x2") return 8;
  return 0;  // coefficient-file: derived from the files later
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& file) {
  TomlTable table = parse_toml_file(file);
  for (const auto& [section, keys] : table)
    if (section != "experiment" && section != "data" &&
        section != "optimizer" && section != "output")
      throw ConfigError(file.string() + ": unknown section [" + section + "]");

  std::filesystem::path base = file.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };

  ExperimentConfig cfg;

  SectionReader exp(table, "experiment");
  cfg.name = exp.require<std::string>("name");
  cfg.system = exp.require<std::string>("system");
  static const std::set<std::string> kSystems{
      "h2", "h4", "hubbard2x1", "hubbard2x2", "coefficient-file"};
  if (!kSystems.contains(cfg.system))
    throw ConfigError("unknown system '" + cfg.system + "'");
  cfg.template_kind = exp.get<std::string>("template").value_or("a");
  if (cfg.template_kind != "a" && cfg.template_kind != "b")
    throw ConfigError("template must be 'a' or 'b'");
  cfg.cells = static_cast<int>(exp.get<std::int64_t>("cells").value_or(1));
  cfg.n_latent = static_cast<int>(exp.require<std::int64_t>("n_latent"));
  cfg.seed = static_cast<std::uint64_t>(
      exp.get<std::int64_t>("seed").value_or(1));
  exp.reject_unknown();

  SectionReader data(table, "data");
  if (auto fixtures = data.get<std::string>("fixtures"))
    cfg.fixtures = resolve(*fixtures);
  for (const std::string& f : data.get_string_array("train_files"))
    cfg.train_files.push_back(resolve(f));
  for (const std::string& f : data.get_string_array("test_files"))
    cfg.test_files.push_back(resolve(f));
  cfg.train = data.get_double_array("train");
  cfg.test = data.get_double_array("test");
  cfg.hubbard_u = data.get<double>("u").value_or(2.0);
  data.reject_unknown();

  SectionReader opt(table, "optimizer");
  cfg.restarts =
      static_cast<int>(opt.get<std::int64_t>("restarts").value_or(5));
  cfg.threads = static_cast<int>(opt.get<std::int64_t>("threads").value_or(0));
  cfg.optimizer.max_iterations = static_cast<int>(
      opt.get<std::int64_t>("max_iterations").value_or(1000));
  cfg.optimizer.tolerance = opt.get<double>("tolerance").value_or(1e-9);
  cfg.optimizer.fd_step = opt.get<double>("fd_step").value_or(1e-8);
  cfg.optimizer.history =
      static_cast<int>(opt.get<std::int64_t>("history").value_or(10));
  cfg.optimizer.hops = static_cast<int>(opt.get<std::int64_t>("hops").value_or(4));
  cfg.optimizer.hop_scale = opt.get<double>("hop_scale").value_or(1.0);
  cfg.optimizer.hop_temperature =
      opt.get<double>("temperature").value_or(0.1);
  opt.reject_unknown();

  SectionReader out(table, "output");
  cfg.output = resolve(out.require<std::string>("dir"));
  out.reject_unknown();

  cfg.n_qubits = system_qubits(cfg.system);

  if (cfg.system == "coefficient-file") {
    if (cfg.train_files.empty())
      throw ConfigError("coefficient-file system needs [data] train_files");
    if (!cfg.train.empty() || !cfg.test.empty())
      throw ConfigError(
          "coefficient-file system takes file lists, not geometry grids");
  } else {
    if (cfg.fixtures.empty() && (cfg.system == "h2" || cfg.system == "h4"))
      throw ConfigError("molecular systems need [data] fixtures");
    if (cfg.train.empty())
      throw ConfigError("[data] train grid must not be empty");
    if (!cfg.train_files.empty() || !cfg.test_files.empty())
      throw ConfigError("geometry-grid systems take grids, not file lists");
  }

  if (cfg.restarts < 1) throw ConfigError("restarts must be at least 1");
  if (cfg.cells < 1) throw ConfigError("cells must be at least 1");
  if (cfg.n_qubits > 0 &&
      (cfg.n_latent < 1 || cfg.n_latent >= cfg.n_qubits))
    throw ConfigError("n_latent must be in [1, n_qubits)");
  return cfg;
}

}  // namespace qae::cli
