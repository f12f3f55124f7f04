#include "ehrelay/geometry.hpp"

#include <cmath>
#include <string>

#include "ehrelay/errors.hpp"

namespace ehrelay {

double distance(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void ChannelParams::validate() const {
    const double values[] = {lambda1, lambda2, omega1, omega2, nu1, nu2, nu3};
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ConfigError("channel parameters must be strictly positive and finite");
        }
    }
}

namespace {

double link_gain(Point a, Point b, double m, const char* link_name) {
    const double d = distance(a, b);
    if (d < 1.0) {
        throw ConfigError(std::string("link distance below one for ") + link_name +
                          " (d = " + std::to_string(d) + ")");
    }
    return std::pow(d, -m);
}

}  // namespace

ChannelParams channel_params(const NodeLayout& layout, double path_loss_exponent) {
    if (!(path_loss_exponent > 0.0)) {
        throw ConfigError("path loss exponent must be positive");
    }
    ChannelParams c;
    c.lambda1 = link_gain(layout.ss, layout.sr, path_loss_exponent, "SS->SR");
    c.lambda2 = link_gain(layout.sr, layout.sd, path_loss_exponent, "SR->SD");
    c.omega1 = link_gain(layout.ss, layout.pu_rx_center, path_loss_exponent, "SS->PU_rx");
    c.omega2 = link_gain(layout.sr, layout.pu_rx_center, path_loss_exponent, "SR->PU_rx");
    c.nu1 = link_gain(layout.pu_tx_center, layout.ss, path_loss_exponent, "PU_tx->SS");
    c.nu2 = link_gain(layout.pu_tx_center, layout.sr, path_loss_exponent, "PU_tx->SR");
    c.nu3 = link_gain(layout.pu_tx_center, layout.sd, path_loss_exponent, "PU_tx->SD");
    return c;
}

}  // namespace ehrelay
