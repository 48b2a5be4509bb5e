#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace boundres::net {

enum class Activation { relu, linear };

/// Where a neuron reads from: a raw input coordinate or a neuron of an
/// earlier layer. Layers may be skipped.
struct Source {
    enum class Kind { input, layer };
    Kind kind = Kind::input;
    std::size_t layer = 0; // meaningful for Kind::layer
    std::size_t index = 0;

    static Source input(std::size_t i) { return {Kind::input, 0, i}; }
    static Source neuron(std::size_t layer, std::size_t i) { return {Kind::layer, layer, i}; }

    friend bool operator==(const Source&, const Source&) = default;
};

struct Connection {
    Source src;
    double weight = 0.0;

    friend bool operator==(const Connection&, const Connection&) = default;
};

struct Neuron {
    Activation activation = Activation::relu;
    double bias = 0.0;
    std::vector<Connection> inputs;

    friend bool operator==(const Neuron&, const Neuron&) = default;
};

struct Layer {
    std::vector<Neuron> neurons;

    friend bool operator==(const Layer&, const Layer&) = default;
};

/// Per-neuron values of one forward pass.
struct Trace {
    std::vector<std::vector<double>> pre;  // affine combination before activation
    std::vector<std::vector<double>> post; // after activation
};

/// Layered feed-forward network with skip connections. Validated on
/// construction: every source refers to a raw input or a strictly earlier
/// layer, and every neuron feeds the last layer.
class LayeredNetwork {
public:
    LayeredNetwork(std::size_t dim, std::vector<Layer> layers);

    std::size_t dim() const noexcept { return dim_; }
    std::span<const Layer> layers() const noexcept { return layers_; }
    std::size_t layer_count() const noexcept { return layers_.size(); }
    std::size_t unit_count() const noexcept;
    std::size_t output_count() const noexcept { return layers_.back().neurons.size(); }

    std::vector<double> eval(std::span<const double> x) const;
    Trace trace(std::span<const double> x) const;

    /// Single-output convenience; throws on multi-output networks.
    double eval_scalar(std::span<const double> x) const;

    friend bool operator==(const LayeredNetwork& a, const LayeredNetwork& b) {
        return a.dim_ == b.dim_ && a.layers_ == b.layers_;
    }

private:
    // Post-activation values of all neurons in layer order; returns the
    // offset of the last layer.
    std::size_t forward(std::span<const double> x, std::span<double> post) const;

    std::size_t dim_;
    std::vector<Layer> layers_;
    std::vector<std::size_t> offsets_; // first flat index of each layer
};

/// Two-input norm approximation of depth k: k-1 hidden layers (4 units, then
/// 3 per layer) that fold the angle by pi/2^i, and one linear output unit
/// minus `radius`. 3k-1 units in k layers.
LayeredNetwork build_norm2d(int k, double radius);

/// Chains d-1 copies of the two-input block: block l reads the previous
/// block's output and raw input x_{l+1} through a skip connection. Only the
/// last block subtracts `radius`. (d-1)(3k-1) units in k(d-1) layers.
LayeredNetwork build_norm_nd(int d, int k, double radius);

std::vector<double> eval_network(const LayeredNetwork& net, std::span<const double> x);

enum class BallSide { inside, boundary, outside };

/// Sign of the scalar output against 1e-12: <= 0 means inside.
BallSide classify_ball(const LayeredNetwork& net, std::span<const double> x);

const char* to_string(BallSide side);

/// theta_i = pi / 2^i.
double fold_angle(int i);

} // namespace boundres::net
