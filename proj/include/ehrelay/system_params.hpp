#pragma once

#include "ehrelay/geometry.hpp"

namespace ehrelay {

// Full scalar parameter set of the network, in linear units (watts and
// dimensionless gains). Any dB-valued user input must be converted
// exactly once, at the configuration boundary, before constructing this.
struct SystemParams {
    SystemParams(double alpha_in, double eta_in, double p_interference_in,
                 double p_putx_in, int m_receivers_in, int n_transmitters_in,
                 ChannelParams channel_in);

    double alpha;           // harvesting fraction of each slot, in (0,1)
    double eta;             // energy conversion efficiency, in (0,1)
    double p_interference;  // peak permissible interference power at any PU receiver (W)
    double p_putx;          // transmit power of each PU transmitter (W)
    int m_receivers;        // number of PU receivers
    int n_transmitters;     // number of PU transmitters
    ChannelParams channel;

    // Composite harvesting gain 2*eta*alpha/(1-alpha). Recomputed on
    // demand so it can never go stale against alpha or eta.
    double rho() const { return 2.0 * eta * alpha / (1.0 - alpha); }
};

}  // namespace ehrelay
