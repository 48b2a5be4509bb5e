#include "boundres/network.hpp"

#include "boundres/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace boundres::net {

namespace {

std::string where(std::size_t layer, std::size_t neuron) {
    return "layer " + std::to_string(layer) + ", neuron " + std::to_string(neuron);
}

// Appends layers computing one folding block on inputs (u, v).
// Returns the source of the block's linear output neuron.
class BlockBuilder {
public:
    BlockBuilder(std::vector<Layer>& layers, int k) : layers_(layers), k_(k) {}

    Source append(Source u, Source v, double radius) {
        // |u| = relu(u) + relu(-u), |v| likewise.
        Layer first;
        for (Source s : {u, v}) {
            for (double sign : {1.0, -1.0}) {
                first.neurons.push_back(Neuron{Activation::relu, 0.0, {{s, sign}}});
            }
        }
        layers_.push_back(std::move(first));

        // Current (f, fbar) as weighted sums over the last layer's neurons.
        std::size_t at = layers_.size() - 1;
        std::vector<std::size_t> f_terms{0, 1};
        std::vector<std::size_t> fbar_terms{2, 3};

        auto combine = [&](double cf, double cfbar) {
            std::vector<Connection> in;
            for (std::size_t i : f_terms) in.push_back({Source::neuron(at, i), cf});
            for (std::size_t i : fbar_terms) in.push_back({Source::neuron(at, i), cfbar});
            return in;
        };

        for (int i = 2; i < k_; ++i) {
            const double c = std::cos(fold_angle(i));
            const double s = std::sin(fold_angle(i));
            Layer layer;
            // f' = c f + s fbar;  fbar' = |-s f + c fbar| split into two relus.
            layer.neurons.push_back(Neuron{Activation::relu, 0.0, combine(c, s)});
            layer.neurons.push_back(Neuron{Activation::relu, 0.0, combine(-s, c)});
            layer.neurons.push_back(Neuron{Activation::relu, 0.0, combine(s, -c)});
            layers_.push_back(std::move(layer));
            at = layers_.size() - 1;
            f_terms = {0};
            fbar_terms = {1, 2};
        }

        const double c = std::cos(fold_angle(k_));
        const double s = std::sin(fold_angle(k_));
        Layer out;
        out.neurons.push_back(Neuron{Activation::linear, -radius, combine(c, s)});
        layers_.push_back(std::move(out));
        return Source::neuron(layers_.size() - 1, 0);
    }

private:
    std::vector<Layer>& layers_;
    int k_;
};

} // namespace

double fold_angle(int i) { return std::ldexp(std::numbers::pi, -i); }

LayeredNetwork::LayeredNetwork(std::size_t dim, std::vector<Layer> layers)
    : dim_(dim), layers_(std::move(layers)) {
    if (dim_ == 0) throw DomainError("network input dimension must be >= 1");
    if (layers_.empty()) throw DomainError("network needs at least one layer");

    std::vector<std::vector<bool>> used(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        if (layers_[l].neurons.empty()) throw DomainError("layer " + std::to_string(l) + " is empty");
        used[l].assign(layers_[l].neurons.size(), false);
    }
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        for (std::size_t n = 0; n < layers_[l].neurons.size(); ++n) {
            const Neuron& neuron = layers_[l].neurons[n];
            if (!std::isfinite(neuron.bias)) throw DomainError("non-finite bias at " + where(l, n));
            for (const Connection& c : neuron.inputs) {
                if (!std::isfinite(c.weight)) throw DomainError("non-finite weight at " + where(l, n));
                if (c.src.kind == Source::Kind::input) {
                    if (c.src.index >= dim_) throw DomainError("input index out of range at " + where(l, n));
                } else {
                    if (c.src.layer >= l) throw DomainError("non-causal reference at " + where(l, n));
                    if (c.src.index >= layers_[c.src.layer].neurons.size())
                        throw DomainError("neuron index out of range at " + where(l, n));
                }
            }
        }
    }

    offsets_.resize(layers_.size());
    std::size_t total = 0;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        offsets_[l] = total;
        total += layers_[l].neurons.size();
    }

    // Reachability from the outputs, walking layers backwards.
    used.back().assign(used.back().size(), true);
    for (std::size_t l = layers_.size(); l-- > 0;) {
        for (std::size_t n = 0; n < layers_[l].neurons.size(); ++n) {
            if (!used[l][n]) throw DomainError("dead neuron at " + where(l, n));
            for (const Connection& c : layers_[l].neurons[n].inputs)
                if (c.src.kind == Source::Kind::layer) used[c.src.layer][c.src.index] = true;
        }
    }
}

std::size_t LayeredNetwork::unit_count() const noexcept {
    std::size_t n = 0;
    for (const Layer& l : layers_) n += l.neurons.size();
    return n;
}

Trace LayeredNetwork::trace(std::span<const double> x) const {
    if (x.size() != dim_)
        throw DomainError("dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                          std::to_string(x.size()));
    for (double v : x)
        if (!std::isfinite(v)) throw DomainError("non-finite network input");

    Trace t;
    t.pre.resize(layers_.size());
    t.post.resize(layers_.size());
    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& neurons = layers_[l].neurons;
        t.pre[l].resize(neurons.size());
        t.post[l].resize(neurons.size());
        for (std::size_t n = 0; n < neurons.size(); ++n) {
            double z = neurons[n].bias;
            for (const Connection& c : neurons[n].inputs) {
                const double in = c.src.kind == Source::Kind::input ? x[c.src.index]
                                                                    : t.post[c.src.layer][c.src.index];
                z += c.weight * in;
            }
            if (!std::isfinite(z)) throw NumericError("non-finite value at " + where(l, n));
            t.pre[l][n] = z;
            t.post[l][n] = neurons[n].activation == Activation::relu ? std::max(0.0, z) : z;
        }
    }
    return t;
}

std::size_t LayeredNetwork::forward(std::span<const double> x, std::span<double> post) const {
    if (x.size() != dim_)
        throw DomainError("dimension mismatch: expected " + std::to_string(dim_) + ", got " +
                          std::to_string(x.size()));
    for (double v : x)
        if (!std::isfinite(v)) throw DomainError("non-finite network input");

    for (std::size_t l = 0; l < layers_.size(); ++l) {
        const auto& neurons = layers_[l].neurons;
        for (std::size_t n = 0; n < neurons.size(); ++n) {
            double z = neurons[n].bias;
            for (const Connection& c : neurons[n].inputs) {
                const double in = c.src.kind == Source::Kind::input ? x[c.src.index]
                                                                    : post[offsets_[c.src.layer] + c.src.index];
                z += c.weight * in;
            }
            if (!std::isfinite(z)) throw NumericError("non-finite value at " + where(l, n));
            post[offsets_[l] + n] = neurons[n].activation == Activation::relu ? std::max(0.0, z) : z;
        }
    }
    return offsets_.back();
}

std::vector<double> LayeredNetwork::eval(std::span<const double> x) const {
    std::vector<double> post(unit_count());
    const std::size_t last = forward(x, post);
    return std::vector<double>(post.begin() + static_cast<long>(last), post.end());
}

double LayeredNetwork::eval_scalar(std::span<const double> x) const {
    if (output_count() != 1) throw DomainError("network has more than one output");
    std::vector<double> post(unit_count());
    return post[forward(x, post)];
}

std::vector<double> eval_network(const LayeredNetwork& net, std::span<const double> x) {
    return net.eval(x);
}

LayeredNetwork build_norm2d(int k, double radius) { return build_norm_nd(2, k, radius); }

LayeredNetwork build_norm_nd(int d, int k, double radius) {
    if (d < 2) throw DomainError("norm network needs d >= 2");
    if (k < 2) throw DomainError("norm network needs k >= 2");
    if (!(radius >= 0) || !std::isfinite(radius)) throw DomainError("radius must be finite and >= 0");

    std::vector<Layer> layers;
    BlockBuilder block(layers, k);
    Source prev = Source::input(0);
    for (int l = 1; l < d; ++l) {
        const double r = l == d - 1 ? radius : 0.0;
        prev = block.append(prev, Source::input(static_cast<std::size_t>(l)), r);
    }
    return LayeredNetwork(static_cast<std::size_t>(d), std::move(layers));
}

BallSide classify_ball(const LayeredNetwork& net, std::span<const double> x) {
    constexpr double tol = 1e-12;
    const double v = net.eval_scalar(x);
    if (v < -tol) return BallSide::inside;
    if (v > tol) return BallSide::outside;
    return BallSide::boundary;
}

const char* to_string(BallSide side) {
    switch (side) {
    case BallSide::inside: return "inside";
    case BallSide::boundary: return "boundary";
    case BallSide::outside: return "outside";
    }
    return "?";
}

} // namespace boundres::net
