#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "frontier_lab/grid.hpp"

namespace frontier_lab {

// Network input: the map-view and post-traversal-mask windows around a
// frontier point, each resized to 50x50 and stacked (CHW, channel 0 = map).
struct NetState {
    static constexpr int kChannels = 2;
    static constexpr int kSide = 50;
    static constexpr int kValues = kChannels * kSide * kSide;
    std::vector<float> data;
};

// Crops the window x window regions centered at fp (out-of-bounds filled with
// zeros) and resizes them to 50x50 by nearest-neighbor: out[i] maps to source
// index floor(i * window / 50).
NetState extract_state(const GridMap& map_view, const Mask& temp_mask, Cell fp, int window);

// Labelled (state, future-return) pairs. Records are stored pre-shuffled; the
// last tenth is the held-out validation split.
struct Dataset {
    std::array<int, 3> state_dims{NetState::kChannels, NetState::kSide, NetState::kSide};
    std::vector<float> states; // size() * kValues, record-major
    std::vector<float> labels;

    size_t size() const { return labels.size(); }
    size_t val_count() const { return size() / 10; }
    size_t train_count() const { return size() - val_count(); }
    const float* state(size_t i) const { return states.data() + i * NetState::kValues; }
};

void write_dataset(const std::string& path, const Dataset& ds);
Dataset read_dataset(const std::string& path);

// ---------------------------------------------------------------------------
// Scalar regression network. The architecture is a fixed layer list kept in
// the weights so saved models are self-describing.

struct LayerSpec {
    enum class Kind : uint32_t { conv = 1, relu = 2, dense = 3 };
    Kind kind = Kind::relu;
    int in_ch = 0, out_ch = 0, ksize = 0, stride = 0, in_h = 0, in_w = 0; // conv
    int in = 0, out = 0;                                                 // dense

    int out_h() const { return (in_h - ksize) / stride + 1; }
    int out_w() const { return (in_w - ksize) / stride + 1; }
    size_t param_count() const;

    static LayerSpec conv2d(int in_ch, int out_ch, int ksize, int stride, int in_h, int in_w);
    static LayerSpec relu_spec();
    static LayerSpec dense(int in, int out);
    friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// conv 8@5x5/2 - relu - conv 16@3x3/2 - relu - conv 32@3x3/2 - relu -
// dense 64 - relu - dense 1, on the 2x50x50 input.
std::vector<LayerSpec> default_architecture();

// (offset, count) into the flat parameter vector for each parameterized layer.
std::vector<std::pair<size_t, size_t>> param_ranges(const std::vector<LayerSpec>& arch);

struct ModelWeights {
    std::vector<LayerSpec> arch;
    std::vector<double> params;
    // Labels are divided by this before training (the sensor disc area by
    // convention) and predictions multiplied by it, so the regression target
    // stays O(1) across map and sensor scales.
    double output_scale = 1.0;
};

ModelWeights init_network(uint64_t seed);

// Normalized network output. Throws std::domain_error on a non-finite result.
double forward(const ModelWeights& w, const NetState& state);
// forward() rescaled to label units.
double predict(const ModelWeights& w, const NetState& state);

// Batch MSE against normalized labels and its parameter gradient; `labels`
// are raw and divided by output_scale internally. Both run the same kernels
// as training so they double as the gradient-check surface.
double mse_loss(const ModelWeights& w, const float* states, const double* labels, size_t n);
std::vector<double> mse_gradient(const ModelWeights& w, const float* states, const double* labels,
                                 size_t n);

struct TrainConfig {
    double learning_rate = 1e-3;
    double momentum = 0.9;
    int batch_size = 32;
    int epochs = 100;
    uint64_t seed = 0;
    double label_scale = 1.0;
};

struct TrainError : std::runtime_error {
    int epoch;
    TrainError(int epoch_idx, const std::string& what)
        : std::runtime_error(what), epoch(epoch_idx) {}
};

struct TrainResult {
    ModelWeights weights;
    std::vector<double> train_mse; // per epoch, raw label units
    std::vector<double> val_mse;   // per epoch, raw label units
};

// Mini-batch gradient descent with momentum, single-threaded updates, fixed
// shuffle order: a (dataset, config) pair trains to bit-identical weights.
// Throws TrainError when the loss stops being finite.
TrainResult train(const Dataset& ds, const TrainConfig& cfg);

// Binary little-endian weights file: magic, version, output scale, layer
// list, then parameters as f32. Loading widens back to f64, so save-load
// round-trips are exact after the first save.
void save_weights(const std::string& path, const ModelWeights& w);
ModelWeights load_weights(const std::string& path);

} // namespace frontier_lab
