#include "fbrate/validation.hpp"

#include <sstream>

namespace fbrate {

bool GridAxes::empty() const noexcept {
    return m.empty() || mu.empty() || kappa.empty() || eta.empty() || rho2.empty() ||
           snr_db.empty() || a_exponent.empty();
}

std::vector<GridPoint> expand(const GridAxes& axes) {
    std::vector<GridPoint> out;
    for (double m : axes.m)
        for (double mu : axes.mu)
            for (double kappa : axes.kappa)
                for (double eta : axes.eta)
                    for (double rho2 : axes.rho2)
                        for (double db : axes.snr_db)
                            for (double a : axes.a_exponent) {
                                GridPoint g;
                                g.params = {mu, m, kappa, eta, rho2, db_to_linear(db)};
                                g.a_exponent = a;
                                g.snr_db = db;
                                out.push_back(g);
                            }
    return out;
}

std::vector<GridPoint> cross_method_grid() { return expand(GridAxes{}); }

std::vector<GridPoint> monte_carlo_grid() {
    std::vector<GridPoint> out;
    auto add = [&](ChannelParams p, double db, double a, const std::string& name) {
        p.gamma_bar = db_to_linear(db);
        std::ostringstream label;
        label << name << " mu=" << p.mu << " m=" << p.m << " snr_db=" << db << " A=" << a;
        out.push_back({p, a, db, label.str()});
    };
    // mu sweep: m = 1, kappa = 1, eta = 0.1, rho2 = 0.1, A = 2
    for (double mu : {1.0, 2.0, 4.0})
        for (double db : {-10.0, 0.0, 10.0, 20.0})
            add({mu, 1.0, 1.0, 0.1, 0.1, 1.0}, db, 2.0, "mu-sweep");
    // shadowing sweep, integer cluster counts only
    for (double m : {0.5, 1.0, 3.0})
        for (double mu : {1.0, 2.0})
            for (double db : {0.0, 10.0})
                add({mu, m, 1.0, 0.1, 0.1, 1.0}, db, 2.0, "m-sweep");
    add(preset(Preset::rayleigh), 0.0, 2.0, "rayleigh");
    add(preset(Preset::rayleigh), 10.0, 0.5, "rayleigh");
    add(preset(Preset::rician, {.kappa = 3.0}), 0.0, 1.0, "rician");
    add(preset(Preset::rician, {.kappa = 3.0}), 10.0, 5.0, "rician");
    add(preset(Preset::kappa_mu_shadowed, {.mu = 3.0, .m = 2.0, .kappa = 2.0}), 0.0, 2.0, "kms");
    add(preset(Preset::kappa_mu_shadowed, {.mu = 3.0, .m = 2.0, .kappa = 2.0}), 10.0, 1.0, "kms");
    add(preset(Preset::beckmann, {.kappa = 1.0, .eta = 0.5, .rho2 = 1.0}), 0.0, 2.0, "beckmann");
    add(preset(Preset::beckmann, {.kappa = 1.0, .eta = 0.5, .rho2 = 1.0}), 10.0, 2.0, "beckmann");
    add(preset(Preset::nakagami_m, {.mu = 3.0}), 0.0, 2.0, "nakagami");
    add(preset(Preset::nakagami_m, {.mu = 3.0}), 10.0, 1.0, "nakagami");
    add(preset(Preset::eta_mu, {.mu = 2.0, .eta = 0.3}), 0.0, 2.0, "eta-mu");
    add(preset(Preset::eta_mu, {.mu = 2.0, .eta = 0.3}), 10.0, 5.0, "eta-mu");
    for (double db : {-5.0, 5.0, 15.0, 25.0})
        add({3.0, 0.7, 5.0, 2.0, 0.5, 1.0}, db, 1.0, "corner");
    return out;
}

}  // namespace fbrate
