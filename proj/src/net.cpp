#include "frontier_lab/net.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "frontier_lab/kernels.hpp"
#include "frontier_lab/rng.hpp"

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; add byte swaps before porting");

namespace frontier_lab {

NetState extract_state(const GridMap& map_view, const Mask& temp_mask, Cell fp, int window) {
    if (window <= 0) throw std::invalid_argument("extract_state: window must be positive");
    if (map_view.size() != temp_mask.size())
        throw std::invalid_argument("extract_state: grid size mismatch");
    if (!map_view.in_bounds(fp)) throw std::invalid_argument("extract_state: fp out of bounds");

    NetState st;
    st.data.assign(NetState::kValues, 0.0f);
    const int side = NetState::kSide;
    const int r0 = fp.r - window / 2;
    const int c0 = fp.c - window / 2;
    const BinaryGrid* channels[2] = {&map_view, &temp_mask};
    for (int ch = 0; ch < 2; ++ch) {
        float* out = st.data.data() + ch * side * side;
        for (int i = 0; i < side; ++i) {
            const int r = r0 + i * window / side;
            for (int j = 0; j < side; ++j) {
                const int c = c0 + j * window / side;
                const bool in = r >= 0 && r < map_view.size() && c >= 0 && c < map_view.size();
                out[i * side + j] = in ? static_cast<float>(channels[ch]->at(r, c)) : 0.0f;
            }
        }
    }
    return st;
}

// --------------------------------------------------------------------------
// binary IO helpers

namespace {

constexpr uint32_t kDatasetMagic = 0x53444c46;  // "FLDS"
constexpr uint32_t kWeightsMagic = 0x574e4c46;  // "FLNW"
constexpr uint32_t kFormatVersion = 1;

template <typename T>
void put(std::ofstream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

} // namespace

void write_dataset(const std::string& path, const Dataset& ds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write dataset: " + path);
    put(out, kDatasetMagic);
    put(out, kFormatVersion);
    put(out, static_cast<uint64_t>(ds.size()));
    for (int d : ds.state_dims) put(out, static_cast<uint32_t>(d));
    for (size_t i = 0; i < ds.size(); ++i) {
        out.write(reinterpret_cast<const char*>(ds.state(i)), NetState::kValues * sizeof(float));
        put(out, ds.labels[i]);
    }
    if (!out) throw std::runtime_error("dataset write failed: " + path);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read dataset: " + path);
    if (get<uint32_t>(in) != kDatasetMagic) throw std::runtime_error("not a dataset file: " + path);
    if (get<uint32_t>(in) != kFormatVersion)
        throw std::runtime_error("unsupported dataset version: " + path);
    const auto n = get<uint64_t>(in);
    Dataset ds;
    for (int& d : ds.state_dims) d = static_cast<int>(get<uint32_t>(in));
    if (ds.state_dims != std::array<int, 3>{2, 50, 50})
        throw std::runtime_error("unexpected state dims: " + path);
    ds.states.resize(n * NetState::kValues);
    ds.labels.resize(n);
    for (uint64_t i = 0; i < n; ++i) {
        in.read(reinterpret_cast<char*>(ds.states.data() + i * NetState::kValues),
                NetState::kValues * sizeof(float));
        ds.labels[i] = get<float>(in);
    }
    if (!in) throw std::runtime_error("dataset truncated: " + path);
    return ds;
}

// --------------------------------------------------------------------------
// architecture

size_t LayerSpec::param_count() const {
    switch (kind) {
        case Kind::conv:
            return static_cast<size_t>(out_ch) * in_ch * ksize * ksize + out_ch;
        case Kind::dense:
            return static_cast<size_t>(out) * in + out;
        default:
            return 0;
    }
}

LayerSpec LayerSpec::conv2d(int in_ch, int out_ch, int ksize, int stride, int in_h, int in_w) {
    LayerSpec l;
    l.kind = Kind::conv;
    l.in_ch = in_ch;
    l.out_ch = out_ch;
    l.ksize = ksize;
    l.stride = stride;
    l.in_h = in_h;
    l.in_w = in_w;
    return l;
}

LayerSpec LayerSpec::relu_spec() {
    return LayerSpec{};
}

LayerSpec LayerSpec::dense(int in, int out) {
    LayerSpec l;
    l.kind = Kind::dense;
    l.in = in;
    l.out = out;
    return l;
}

std::vector<LayerSpec> default_architecture() {
    std::vector<LayerSpec> a;
    a.push_back(LayerSpec::conv2d(2, 8, 5, 2, 50, 50)); // -> 8x23x23
    a.push_back(LayerSpec::relu_spec());
    a.push_back(LayerSpec::conv2d(8, 16, 3, 2, 23, 23)); // -> 16x11x11
    a.push_back(LayerSpec::relu_spec());
    a.push_back(LayerSpec::conv2d(16, 32, 3, 2, 11, 11)); // -> 32x5x5
    a.push_back(LayerSpec::relu_spec());
    a.push_back(LayerSpec::dense(800, 64));
    a.push_back(LayerSpec::relu_spec());
    a.push_back(LayerSpec::dense(64, 1));
    return a;
}

std::vector<std::pair<size_t, size_t>> param_ranges(const std::vector<LayerSpec>& arch) {
    std::vector<std::pair<size_t, size_t>> ranges;
    size_t off = 0;
    for (const auto& l : arch) {
        const size_t n = l.param_count();
        if (n > 0) ranges.emplace_back(off, n);
        off += n;
    }
    return ranges;
}

namespace {

size_t total_params(const std::vector<LayerSpec>& arch) {
    size_t n = 0;
    for (const auto& l : arch) n += l.param_count();
    return n;
}

size_t layer_output_size(const LayerSpec& l, size_t input_size) {
    switch (l.kind) {
        case LayerSpec::Kind::conv:
            return static_cast<size_t>(l.out_ch) * l.out_h() * l.out_w();
        case LayerSpec::Kind::dense:
            return static_cast<size_t>(l.out);
        default:
            return input_size;
    }
}

// Per-evaluation scratch: layer activations plus im2col patch buffers.
struct Workspace {
    std::vector<std::vector<double>> acts; // acts[0] = input, acts[i+1] = layer i output
    std::vector<std::vector<double>> cols; // per layer, conv only
    std::vector<std::vector<double>> gacts;
    std::vector<double> chan_tmp;  // one value per output channel
    std::vector<double> patch_tmp; // one value per patch element

    explicit Workspace(const std::vector<LayerSpec>& arch) {
        size_t sz = NetState::kValues;
        size_t max_oc = 1, max_k = 1;
        acts.emplace_back(sz);
        cols.resize(arch.size());
        for (size_t i = 0; i < arch.size(); ++i) {
            const auto& l = arch[i];
            if (l.kind == LayerSpec::Kind::conv) {
                const size_t K = static_cast<size_t>(l.in_ch) * l.ksize * l.ksize;
                cols[i].resize(static_cast<size_t>(l.out_h()) * l.out_w() * K);
                max_oc = std::max(max_oc, static_cast<size_t>(l.out_ch));
                max_k = std::max(max_k, K);
            }
            sz = layer_output_size(l, sz);
            acts.emplace_back(sz);
        }
        gacts.resize(acts.size());
        for (size_t i = 0; i < acts.size(); ++i) gacts[i].resize(acts[i].size());
        chan_tmp.resize(max_oc);
        patch_tmp.resize(max_k);
    }
};

void im2col(const double* in, const LayerSpec& l, double* col) {
    const int K = l.in_ch * l.ksize * l.ksize;
    const int oh = l.out_h(), ow = l.out_w();
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            double* row = col + (static_cast<size_t>(oy) * ow + ox) * K;
            for (int ic = 0; ic < l.in_ch; ++ic) {
                const double* chan = in + static_cast<size_t>(ic) * l.in_h * l.in_w;
                for (int ky = 0; ky < l.ksize; ++ky) {
                    const double* src = chan + static_cast<size_t>(oy * l.stride + ky) * l.in_w +
                                        ox * l.stride;
                    std::memcpy(row, src, l.ksize * sizeof(double));
                    row += l.ksize;
                }
            }
        }
    }
}

void col2im_add(const double* gcol, const LayerSpec& l, double* gin) {
    const int K = l.in_ch * l.ksize * l.ksize;
    const int oh = l.out_h(), ow = l.out_w();
    for (int oy = 0; oy < oh; ++oy) {
        for (int ox = 0; ox < ow; ++ox) {
            const double* row = gcol + (static_cast<size_t>(oy) * ow + ox) * K;
            for (int ic = 0; ic < l.in_ch; ++ic) {
                double* chan = gin + static_cast<size_t>(ic) * l.in_h * l.in_w;
                for (int ky = 0; ky < l.ksize; ++ky) {
                    double* dst = chan + static_cast<size_t>(oy * l.stride + ky) * l.in_w +
                                  ox * l.stride;
                    for (int kx = 0; kx < l.ksize; ++kx) dst[kx] += row[kx];
                    row += l.ksize;
                }
            }
        }
    }
}

double forward_ws(const ModelWeights& w, const float* state, Workspace& ws,
                  bool check_finite = false) {
    for (int i = 0; i < NetState::kValues; ++i) ws.acts[0][i] = state[i];
    size_t off = 0;
    for (size_t li = 0; li < w.arch.size(); ++li) {
        const auto& l = w.arch[li];
        const auto& in = ws.acts[li];
        auto& out = ws.acts[li + 1];
        switch (l.kind) {
            case LayerSpec::Kind::conv: {
                const int K = l.in_ch * l.ksize * l.ksize;
                const int P = l.out_h() * l.out_w();
                const double* W = w.params.data() + off;
                const double* b = W + static_cast<size_t>(l.out_ch) * K;
                im2col(in.data(), l, ws.cols[li].data());
                double* tmp = ws.chan_tmp.data();
                for (int p = 0; p < P; ++p) {
                    kernels::matvec(W, l.out_ch, K, ws.cols[li].data() + static_cast<size_t>(p) * K,
                                    tmp);
                    for (int oc = 0; oc < l.out_ch; ++oc)
                        out[static_cast<size_t>(oc) * P + p] = tmp[oc] + b[oc];
                }
                off += l.param_count();
                break;
            }
            case LayerSpec::Kind::dense: {
                const double* W = w.params.data() + off;
                const double* b = W + static_cast<size_t>(l.out) * l.in;
                kernels::matvec(W, l.out, l.in, in.data(), out.data());
                for (int o = 0; o < l.out; ++o) out[o] += b[o];
                off += l.param_count();
                break;
            }
            case LayerSpec::Kind::relu: {
                for (size_t i = 0; i < in.size(); ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
                break;
            }
        }
        if (check_finite) {
            // the rectifier would silently flush a NaN to zero downstream, so
            // non-finite values must be caught at the layer they appear
            for (double v : out)
                if (!std::isfinite(v))
                    throw std::domain_error("non-finite activation in layer " +
                                            std::to_string(li));
        }
    }
    return ws.acts.back()[0];
}

// Backpropagates d(loss)/d(output) = go through the network, accumulating
// parameter gradients into grad (same layout as params).
void backward_ws(const ModelWeights& w, Workspace& ws, double go, double* grad) {
    ws.gacts.back()[0] = go;
    size_t off = total_params(w.arch);
    for (size_t li = w.arch.size(); li-- > 0;) {
        const auto& l = w.arch[li];
        const auto& in = ws.acts[li];
        auto& gin = ws.gacts[li];
        const auto& gout = ws.gacts[li + 1];
        switch (l.kind) {
            case LayerSpec::Kind::conv: {
                off -= l.param_count();
                const int K = l.in_ch * l.ksize * l.ksize;
                const int P = l.out_h() * l.out_w();
                const double* W = w.params.data() + off;
                double* gW = grad + off;
                double* gb = gW + static_cast<size_t>(l.out_ch) * K;
                // reuse the forward patch matrix; overwrite it with the patch
                // gradients afterwards
                double* col = ws.cols[li].data();
                for (int oc = 0; oc < l.out_ch; ++oc) {
                    const double* grow = gout.data() + static_cast<size_t>(oc) * P;
                    double s = 0.0;
                    for (int p = 0; p < P; ++p) s += grow[p];
                    gb[oc] += s;
                }
                for (int p = 0; p < P; ++p) {
                    const double* patch = col + static_cast<size_t>(p) * K;
                    for (int oc = 0; oc < l.out_ch; ++oc) {
                        const double g = gout[static_cast<size_t>(oc) * P + p];
                        if (g != 0.0) kernels::axpy(g, patch, gW + static_cast<size_t>(oc) * K, K);
                    }
                }
                for (int p = 0; p < P; ++p) {
                    double* gpatch = col + static_cast<size_t>(p) * K;
                    double* acc = ws.patch_tmp.data();
                    std::fill(acc, acc + K, 0.0);
                    for (int oc = 0; oc < l.out_ch; ++oc) {
                        const double g = gout[static_cast<size_t>(oc) * P + p];
                        if (g != 0.0) kernels::axpy(g, W + static_cast<size_t>(oc) * K, acc, K);
                    }
                    std::memcpy(gpatch, acc, static_cast<size_t>(K) * sizeof(double));
                }
                std::fill(gin.begin(), gin.end(), 0.0);
                col2im_add(col, l, gin.data());
                break;
            }
            case LayerSpec::Kind::dense: {
                off -= l.param_count();
                const double* W = w.params.data() + off;
                double* gW = grad + off;
                double* gb = gW + static_cast<size_t>(l.out) * l.in;
                std::fill(gin.begin(), gin.end(), 0.0);
                for (int o = 0; o < l.out; ++o) {
                    const double g = gout[o];
                    gb[o] += g;
                    if (g != 0.0) {
                        kernels::axpy(g, in.data(), gW + static_cast<size_t>(o) * l.in, l.in);
                        kernels::axpy(g, W + static_cast<size_t>(o) * l.in, gin.data(), l.in);
                    }
                }
                break;
            }
            case LayerSpec::Kind::relu: {
                for (size_t i = 0; i < in.size(); ++i) gin[i] = in[i] > 0.0 ? gout[i] : 0.0;
                break;
            }
        }
    }
}

void validate_model(const ModelWeights& w) {
    if (w.arch.empty()) throw std::invalid_argument("model has no layers");
    if (w.params.size() != total_params(w.arch))
        throw std::invalid_argument("parameter vector does not match architecture");
    size_t sz = NetState::kValues;
    for (const auto& l : w.arch) {
        if (l.kind == LayerSpec::Kind::conv &&
            sz != static_cast<size_t>(l.in_ch) * l.in_h * l.in_w)
            throw std::invalid_argument("conv layer input mismatch");
        if (l.kind == LayerSpec::Kind::dense && sz != static_cast<size_t>(l.in))
            throw std::invalid_argument("dense layer input mismatch");
        sz = layer_output_size(l, sz);
    }
    if (sz != 1) throw std::invalid_argument("network must end in a single output");
}

} // namespace

ModelWeights init_network(uint64_t seed) {
    ModelWeights w;
    w.arch = default_architecture();
    w.params.assign(total_params(w.arch), 0.0);
    SplitMix64 rng(derive_seed(seed, seed_stream::net_init, 0));
    size_t off = 0;
    for (const auto& l : w.arch) {
        if (l.kind == LayerSpec::Kind::relu) continue;
        const size_t fan_in = l.kind == LayerSpec::Kind::conv
                                  ? static_cast<size_t>(l.in_ch) * l.ksize * l.ksize
                                  : static_cast<size_t>(l.in);
        const size_t weight_count = l.param_count() - static_cast<size_t>(
            l.kind == LayerSpec::Kind::conv ? l.out_ch : l.out);
        const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
        for (size_t i = 0; i < weight_count; ++i) w.params[off + i] = rng.normal() * scale;
        off += l.param_count(); // biases stay zero
    }
    return w;
}

double forward(const ModelWeights& w, const NetState& state) {
    validate_model(w);
    Workspace ws(w.arch);
    return forward_ws(w, state.data.data(), ws, /*check_finite=*/true);
}

double predict(const ModelWeights& w, const NetState& state) {
    return forward(w, state) * w.output_scale;
}

double mse_loss(const ModelWeights& w, const float* states, const double* labels, size_t n) {
    validate_model(w);
    Workspace ws(w.arch);
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double y = forward_ws(w, states + i * NetState::kValues, ws);
        const double e = y - labels[i] / w.output_scale;
        sum += e * e;
    }
    return sum / static_cast<double>(n);
}

std::vector<double> mse_gradient(const ModelWeights& w, const float* states, const double* labels,
                                 size_t n) {
    validate_model(w);
    Workspace ws(w.arch);
    std::vector<double> grad(w.params.size(), 0.0);
    for (size_t i = 0; i < n; ++i) {
        const double y = forward_ws(w, states + i * NetState::kValues, ws);
        const double go = 2.0 * (y - labels[i] / w.output_scale) / static_cast<double>(n);
        backward_ws(w, ws, go, grad.data());
    }
    return grad;
}

TrainResult train(const Dataset& ds, const TrainConfig& cfg) {
    if (cfg.learning_rate <= 0.0) throw std::invalid_argument("train: learning rate must be > 0");
    if (cfg.batch_size < 1) throw std::invalid_argument("train: batch size must be >= 1");
    if (cfg.label_scale <= 0.0) throw std::invalid_argument("train: label scale must be > 0");
    if (ds.train_count() < static_cast<size_t>(cfg.batch_size))
        throw std::invalid_argument("train: dataset smaller than one batch");

    ModelWeights w = init_network(cfg.seed);
    w.output_scale = cfg.label_scale;
    const size_t np = w.params.size();
    std::vector<double> velocity(np, 0.0), grad(np, 0.0);
    Workspace ws(w.arch);
    const double rescale = cfg.label_scale * cfg.label_scale;

    const size_t ntrain = ds.train_count();
    std::vector<size_t> order(ntrain);
    std::iota(order.begin(), order.end(), size_t{0});

    TrainResult result;
    SplitMix64 shuffle_rng(derive_seed(cfg.seed, seed_stream::shuffle, 0));
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        shuffle(order, shuffle_rng);
        double train_se = 0.0;
        for (size_t b0 = 0; b0 < ntrain; b0 += cfg.batch_size) {
            const size_t b1 = std::min(ntrain, b0 + cfg.batch_size);
            const auto bsz = static_cast<double>(b1 - b0);
            std::fill(grad.begin(), grad.end(), 0.0);
            for (size_t i = b0; i < b1; ++i) {
                const size_t rec = order[i];
                const double y = forward_ws(w, ds.state(rec), ws);
                const double e = y - ds.labels[rec] / cfg.label_scale;
                train_se += e * e;
                backward_ws(w, ws, 2.0 * e / bsz, grad.data());
            }
            for (size_t j = 0; j < np; ++j) velocity[j] *= cfg.momentum;
            kernels::axpy(-cfg.learning_rate, grad.data(), velocity.data(), np);
            kernels::axpy(1.0, velocity.data(), w.params.data(), np);
        }
        const double train_mse = train_se / static_cast<double>(ntrain) * rescale;
        result.train_mse.push_back(train_mse);

        double val_mse = 0.0;
        if (ds.val_count() > 0) {
            double se = 0.0;
            for (size_t i = ntrain; i < ds.size(); ++i) {
                const double y = forward_ws(w, ds.state(i), ws);
                const double e = y - ds.labels[i] / cfg.label_scale;
                se += e * e;
            }
            val_mse = se / static_cast<double>(ds.val_count()) * rescale;
            result.val_mse.push_back(val_mse);
        }
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse))
            throw TrainError(epoch, "training diverged at epoch " + std::to_string(epoch));
    }
    result.weights = std::move(w);
    return result;
}

void save_weights(const std::string& path, const ModelWeights& w) {
    validate_model(w);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write weights: " + path);
    put(out, kWeightsMagic);
    put(out, kFormatVersion);
    put(out, w.output_scale);
    put(out, static_cast<uint32_t>(w.arch.size()));
    for (const auto& l : w.arch) {
        put(out, static_cast<uint32_t>(l.kind));
        for (int v : {l.in_ch, l.out_ch, l.ksize, l.stride, l.in_h, l.in_w, l.in, l.out})
            put(out, static_cast<int32_t>(v));
    }
    put(out, static_cast<uint64_t>(w.params.size()));
    for (double p : w.params) put(out, static_cast<float>(p));
    if (!out) throw std::runtime_error("weights write failed: " + path);
}

ModelWeights load_weights(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read weights: " + path);
    if (get<uint32_t>(in) != kWeightsMagic) throw std::runtime_error("not a weights file: " + path);
    if (get<uint32_t>(in) != kFormatVersion)
        throw std::runtime_error("unsupported weights version: " + path);
    ModelWeights w;
    w.output_scale = get<double>(in);
    const auto nlayers = get<uint32_t>(in);
    for (uint32_t i = 0; i < nlayers; ++i) {
        LayerSpec l;
        l.kind = static_cast<LayerSpec::Kind>(get<uint32_t>(in));
        for (int* f : {&l.in_ch, &l.out_ch, &l.ksize, &l.stride, &l.in_h, &l.in_w, &l.in, &l.out})
            *f = get<int32_t>(in);
        w.arch.push_back(l);
    }
    const auto np = get<uint64_t>(in);
    w.params.resize(np);
    for (uint64_t i = 0; i < np; ++i) w.params[i] = get<float>(in);
    if (!in) throw std::runtime_error("weights file truncated: " + path);
    validate_model(w);
    return w;
}

} // namespace frontier_lab
