#pragma once

namespace ehrelay {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

double distance(Point a, Point b);

// Node placement on the plane. The primary transmitters are collapsed to
// one center point and the primary receivers to another, so a single
// coordinate stands in for each cluster.
struct NodeLayout {
    Point ss{0.0, 0.0};  // secondary source
    Point sr{1.0, 0.0};  // secondary relay
    Point sd{2.0, 0.0};  // secondary destination
    Point pu_tx_center{0.0, 1.0};
    Point pu_rx_center{2.0, 1.0};
};

// Mean link gains of the exponential fading model, one value per link
// family. Every field equals d^(-m) for its link distance d.
struct ChannelParams {
    double lambda1 = 1.0;  // SS -> SR
    double lambda2 = 1.0;  // SR -> SD
    double omega1 = 1.0;   // SS -> PU receivers
    double omega2 = 1.0;   // SR -> PU receivers
    double nu1 = 1.0;      // PU transmitters -> SS
    double nu2 = 1.0;      // PU transmitters -> SR
    double nu3 = 1.0;      // PU transmitters -> SD

    // All seven gains must be strictly positive.
    void validate() const;
};

// Derives the d^(-m) mean gain of every active link. Links from the
// co-located primary clusters use the single center-point distance.
// Any active-link distance below one is rejected: d^(-m) would exceed
// unit mean gain and the path-loss interpretation breaks down.
ChannelParams channel_params(const NodeLayout& layout, double path_loss_exponent);

}  // namespace ehrelay
