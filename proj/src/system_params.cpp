#include "ehrelay/system_params.hpp"

#include <cmath>

#include "ehrelay/errors.hpp"

namespace ehrelay {

SystemParams::SystemParams(double alpha_in, double eta_in, double p_interference_in,
                           double p_putx_in, int m_receivers_in, int n_transmitters_in,
                           ChannelParams channel_in)
    : alpha(alpha_in),
      eta(eta_in),
      p_interference(p_interference_in),
      p_putx(p_putx_in),
      m_receivers(m_receivers_in),
      n_transmitters(n_transmitters_in),
      channel(channel_in) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) {
        throw ConfigError("alpha must lie strictly inside (0,1)");
    }
    if (!(eta > 0.0) || !(eta < 1.0)) {
        throw ConfigError("eta must lie strictly inside (0,1)");
    }
    if (!(p_interference > 0.0) || !std::isfinite(p_interference)) {
        throw ConfigError("interference power limit must be positive and finite");
    }
    if (!(p_putx > 0.0) || !std::isfinite(p_putx)) {
        throw ConfigError("PU transmit power must be positive and finite");
    }
    if (m_receivers < 1) throw ConfigError("number of PU receivers must be >= 1");
    if (n_transmitters < 1) throw ConfigError("number of PU transmitters must be >= 1");
    channel.validate();
}

}  // namespace ehrelay
