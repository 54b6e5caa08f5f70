#include "wavemu/train/checkpoint.hpp"

#include <fstream>
#include <iomanip>
#include <map>

#include "wavemu/error.hpp"
#include "wavemu/nn/serialize.hpp"

namespace wavemu::train {

void save_checkpoint(const std::filesystem::path& dir, ModelSet& models, const PhyConfig& phy, const TrainConfig& tc) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    nn::save_params(dir / "jscc_awgn.wmnn", models.jscc_awgn.fingerprint(), models.jscc_awgn.params());
    nn::save_params(dir / "comp_stage1.wmnn", models.comp_stage1.fingerprint(), models.comp_stage1.params());
    nn::save_params(dir / "jscc.wmnn", models.jscc.fingerprint(), models.jscc.params());
    nn::save_params(dir / "comp.wmnn", models.comp.fingerprint(), models.comp.params());
    nn::save_params(dir / "proxy.wmnn", models.proxy.fingerprint(), models.proxy.params());

    std::ofstream m(dir / "manifest.txt");
    if (!m) throw IoError("cannot write " + (dir / "manifest.txt").string());
    const auto& jc = models.jscc.config();
    const auto& cc = models.comp.config();
    const auto& pc = models.proxy.config();
    m << std::setprecision(17);
    m << "phy=" << phy.fingerprint() << '\n'
      << "seed=" << tc.seed << '\n'
      << "jscc.side=" << jc.side << "\njscc.k=" << jc.k << "\njscc.hidden=" << jc.hidden << '\n'
      << "comp.period_o=" << cc.periods.period_o << "\ncomp.period_j=" << cc.periods.period_j
      << "\ncomp.cp_len=" << cc.cp_len << "\ncomp.layers=" << cc.layers << "\ncomp.kernel=" << cc.kernel
      << "\ncomp.channels=" << cc.channels << "\ncomp.residual=" << cc.residual << "\ncomp.positional=" << cc.positional
      << "\ncomp.snr_input=" << cc.snr_input << '\n'
      << "proxy.layers=" << pc.layers << "\nproxy.kernel=" << pc.kernel << "\nproxy.channels=" << pc.channels
      << "\nproxy.residual=" << pc.residual << "\nproxy.noise=" << pc.noise << "\nproxy.ref_power=" << pc.ref_power
      << '\n'
      << "train.gamma=" << tc.gamma << "\ntrain.batch_size=" << tc.batch_size << "\ntrain.max_cycles=" << tc.max_cycles
      << "\ntrain.tolerance=" << tc.tolerance << '\n';
}

ModelSet load_checkpoint(const std::filesystem::path& dir, const PhyConfig& phy) {
    std::ifstream in(dir / "manifest.txt");
    if (!in)
        throw IoError("no trained models in '" + dir.string() + "'; run `wavemu train-e2e --out " + dir.string() +
                      "` first");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
    }
    auto get = [&](const std::string& k) -> const std::string& {
        const auto it = kv.find(k);
        if (it == kv.end()) throw IoError("checkpoint manifest lacks '" + k + "'");
        return it->second;
    };
    auto num = [&](const std::string& k) { return static_cast<std::size_t>(std::stoull(get(k))); };
    if (get("phy") != phy.fingerprint())
        throw IoError("checkpoint was trained for PHY " + get("phy") + ", not " + phy.fingerprint());

    nn::JsccConfig jc{num("jscc.side"), num("jscc.k"), num("jscc.hidden")};
    nn::CompensatorConfig cc;
    cc.periods = {num("comp.period_o"), num("comp.period_j")};
    cc.cp_len = num("comp.cp_len");
    cc.layers = num("comp.layers");
    cc.kernel = num("comp.kernel");
    cc.channels = num("comp.channels");
    cc.residual = num("comp.residual") != 0;
    cc.positional = num("comp.positional") != 0;
    cc.snr_input = num("comp.snr_input") != 0;
    nn::ProxyConfig pc;
    pc.layers = num("proxy.layers");
    pc.kernel = num("proxy.kernel");
    pc.channels = num("proxy.channels");
    pc.residual = num("proxy.residual") != 0;
    pc.noise = num("proxy.noise") != 0;
    pc.ref_power = std::stod(get("proxy.ref_power"));

    ModelSet m = make_models(phy, jc, cc, pc, 0);
    nn::load_params(dir / "jscc_awgn.wmnn", m.jscc_awgn.fingerprint(), m.jscc_awgn.params());
    nn::load_params(dir / "comp_stage1.wmnn", m.comp_stage1.fingerprint(), m.comp_stage1.params());
    nn::load_params(dir / "jscc.wmnn", m.jscc.fingerprint(), m.jscc.params());
    nn::load_params(dir / "comp.wmnn", m.comp.fingerprint(), m.comp.params());
    nn::load_params(dir / "proxy.wmnn", m.proxy.fingerprint(), m.proxy.params());
    return m;
}

}  // namespace wavemu::train
