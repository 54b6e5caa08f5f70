#include "wavemu/harness/config_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "wavemu/error.hpp"

namespace wavemu::harness {

namespace pt = boost::property_tree;

void ExperimentSpec::validate() const {
    phy.validate();
    if (snrs.empty()) throw ConfigError("sweep: SNR list is empty");
    if (!std::is_sorted(snrs.begin(), snrs.end())) throw ConfigError("sweep: SNR list must be sorted");
    if (symbols < 1 || images < 1) throw ConfigError("sweep: workload counts must be >= 1");
    if (systems.empty()) throw ConfigError("sweep: no systems selected");
    for (const auto& s : systems)
        if (std::find(kSystems.begin(), kSystems.end(), s) == kSystems.end())
            throw ConfigError("sweep: unknown system '" + s + "'");
    if (!(float_bound > 0.0)) throw ConfigError("sweep: float_bound must be positive");
}

nn::CompensatorConfig ToolConfig::compensator(std::size_t n_chosen) const {
    auto c = train::default_compensator_config(sweep.phy, n_chosen);
    if (comp_period_j) c.periods.period_j = comp_period_j;
    c.layers = comp_layers;
    c.kernel = comp_kernel;
    c.channels = comp_channels;
    c.residual = comp_residual;
    c.positional = comp_positional;
    c.snr_input = comp_snr_input;
    return c;
}

std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    const auto dots = text.find("..");
    try {
        if (dots != std::string::npos) {
            const auto colon = text.find(':', dots);
            const double lo = std::stod(text.substr(0, dots));
            const double hi = std::stod(text.substr(dots + 2, colon == std::string::npos ? std::string::npos : colon - dots - 2));
            const double step = colon == std::string::npos ? 5.0 : std::stod(text.substr(colon + 1));
            if (!(step > 0)) throw ConfigError("SNR step must be positive");
            for (long i = 0;; ++i) {
                const double v = lo + static_cast<double>(i) * step;
                if (v > hi + 1e-9) break;
                out.push_back(v);
            }
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ','))
                if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(std::stod(item));
        }
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const ConfigError*>(&e)) throw;
        throw ConfigError("malformed SNR list '" + text + "'");
    }
    if (out.empty()) throw ConfigError("empty SNR list '" + text + "'");
    return out;
}

namespace {

std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto a = item.find_first_not_of(" \t");
        const auto b = item.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
    }
    return out;
}

class Section {
public:
    Section(const pt::ptree& tree, std::string name) : name_(std::move(name)) {
        if (const auto child = tree.get_child_optional(name_))
            for (const auto& [k, v] : *child) values_[k] = v.data();
    }
    bool has(const std::string& k) const { return values_.count(k) != 0; }
    const std::string& raw(const std::string& k) {
        used_.insert(k);
        return values_.at(k);
    }
    template <class T>
    void read(const std::string& k, T& dst) {
        if (!has(k)) return;
        const std::string& v = raw(k);
        try {
            if constexpr (std::is_same_v<T, bool>) {
                if (v == "true" || v == "1" || v == "on" || v == "yes") dst = true;
                else if (v == "false" || v == "0" || v == "off" || v == "no") dst = false;
                else throw std::invalid_argument(v);
            } else if constexpr (std::is_floating_point_v<T>) {
                dst = std::stod(v);
            } else {
                const long long x = std::stoll(v, nullptr, 0);
                if (x < 0) throw std::invalid_argument(v);
                dst = static_cast<T>(x);
            }
        } catch (const std::logic_error&) {
            throw ConfigError("[" + name_ + "] " + k + ": cannot parse '" + v + "'");
        }
    }
    std::map<std::string, std::string> all() {
        for (const auto& [k, v] : values_) used_.insert(k);
        return values_;
    }
    void finish() const {
        for (const auto& [k, v] : values_)
            if (!used_.count(k)) throw ConfigError("[" + name_ + "] unknown key '" + k + "'");
    }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
    std::set<std::string> used_;
};

ToolConfig from_tree(const pt::ptree& tree) {
    static const std::set<std::string> known = {"phy", "sweep", "train", "jscc", "compensator", "proxy", "gf2"};
    for (const auto& [k, v] : tree)
        if (!known.count(k)) throw ConfigError("unknown config section [" + k + "]");
    ToolConfig c;

    Section phy(tree, "phy");
    c.sweep.phy = phy_config_from_keys(phy.all());
    phy.finish();

    Section sw(tree, "sweep");
    if (sw.has("snr_db")) c.sweep.snrs = parse_snr_list(sw.raw("snr_db"));
    sw.read("symbols", c.sweep.symbols);
    sw.read("images", c.sweep.images);
    if (sw.has("systems")) c.sweep.systems = split(sw.raw("systems"));
    sw.read("seed", c.sweep.seed);
    if (sw.has("out")) c.sweep.out = sw.raw("out");
    if (sw.has("checkpoint")) c.sweep.checkpoint = sw.raw("checkpoint");
    if (sw.has("mode")) c.sweep.mode = parse_recovery_mode(sw.raw("mode"));
    sw.read("float_bound", c.sweep.float_bound);
    sw.finish();

    Section tr(tree, "train");
    auto& t = c.train;
    tr.read("batch_size", t.batch_size);
    tr.read("momentum", t.momentum);
    tr.read("gamma", t.gamma);
    tr.read("tolerance", t.tolerance);
    t.seed = c.sweep.seed;
    tr.read("seed", t.seed);
    tr.read("train_images", t.train_images);
    tr.read("pretrain_epochs", t.pretrain_epochs);
    tr.read("lr_jscc", t.lr_jscc);
    tr.read("stage1_epochs", t.stage1_epochs);
    tr.read("stage1_waveforms", t.stage1_waveforms);
    tr.read("stage1_snr_db", t.stage1_snr_db);
    tr.read("stage1_band_lo", t.stage1_band_lo);
    tr.read("stage1_band_hi", t.stage1_band_hi);
    tr.read("lr_comp", t.lr_comp);
    tr.read("stage2_epochs", t.stage2_epochs);
    tr.read("stage2_records", t.stage2_records);
    tr.read("heldout_fraction", t.heldout_fraction);
    tr.read("lr_proxy", t.lr_proxy);
    tr.read("max_cycles", t.max_cycles);
    tr.read("phase_a_epochs", t.phase_a_epochs);
    tr.read("phase_b_epochs", t.phase_b_epochs);
    tr.read("refresh_batch_count", t.refresh_batch_count);
    tr.read("relax_quantizer", t.relax_quantizer);
    tr.read("lr_joint", t.lr_joint);
    if (tr.has("snr_policy")) {
        const auto& p = tr.raw("snr_policy");
        if (p == "fixed") t.curriculum.snr = train::Curriculum::Snr::Fixed;
        else if (p == "uniform") t.curriculum.snr = train::Curriculum::Snr::Uniform;
        else throw ConfigError("[train] snr_policy must be 'fixed' or 'uniform'");
    }
    tr.read("snr_db", t.curriculum.fixed_snr_db);
    tr.read("snr_min_db", t.curriculum.snr_min_db);
    tr.read("snr_max_db", t.curriculum.snr_max_db);
    if (tr.has("source")) {
        const auto& s = tr.raw("source");
        if (s == "jscc") t.curriculum.source = train::Curriculum::Source::Jscc;
        else if (s == "gaussian") t.curriculum.source = train::Curriculum::Source::Gaussian;
        else throw ConfigError("[train] source must be 'jscc' or 'gaussian'");
    }
    tr.finish();

    Section js(tree, "jscc");
    js.read("side", c.jscc.side);
    js.read("k", c.jscc.k);
    js.read("hidden", c.jscc.hidden);
    js.finish();

    Section cp(tree, "compensator");
    cp.read("period_j", c.comp_period_j);
    cp.read("layers", c.comp_layers);
    cp.read("kernel", c.comp_kernel);
    cp.read("channels", c.comp_channels);
    cp.read("residual", c.comp_residual);
    cp.read("positional", c.comp_positional);
    cp.read("snr_input", c.comp_snr_input);
    cp.finish();

    Section px(tree, "proxy");
    px.read("layers", c.proxy.layers);
    px.read("kernel", c.proxy.kernel);
    px.read("channels", c.proxy.channels);
    px.read("residual", c.proxy.residual);
    px.read("noise", c.proxy.noise);
    px.finish();

    Section g(tree, "gf2");
    g.read("generator_a", c.gen_a);
    g.read("generator_b", c.gen_b);
    g.finish();

    c.sweep.validate();
    c.train.validate();
    return c;
}

}  // namespace

ToolConfig parse_config(const std::string& text) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return from_tree(tree);
}

ToolConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace wavemu::harness
