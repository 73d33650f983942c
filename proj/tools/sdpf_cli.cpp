/**
 * @file sdpf_cli.cpp
 * @brief Command-line front end: dither, visualize, extract, train,
 *        classify, eval and bench
 */

#include <sdpf/Bench.h>
#include <sdpf/DescriptorIO.h>
#include <sdpf/Dither.h>
#include <sdpf/Error.h>
#include <sdpf/Evaluation.h>
#include <sdpf/Extractor.h>
#include <sdpf/Knn.h>
#include <sdpf/Svm.h>

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace Sdpf;

struct CommonFlags {
    DescriptorConfig descriptor;
    bool noNormalize = false;
    SvmConfig svm;
    int size = 128;

    void AddDescriptor(CLI::App* cmd) {
        cmd->add_option("--kd", descriptor.distanceBins, "Distance bins")->capture_default_str();
        cmd->add_option("--ka", descriptor.angleBins, "Angle bins")->capture_default_str();
        cmd->add_option("--kc", descriptor.colorBins, "Color bins (must be 8)")->capture_default_str();
        cmd->add_flag("--no-normalize", noNormalize, "Keep raw histogram counts");
        cmd->add_option("--nms-window", descriptor.nmsWindow, "Suppression window in patterns")->capture_default_str();
    }

    void AddSvm(CLI::App* cmd) {
        cmd->add_option("--svm-c", svm.c, "SVM regularization C")->capture_default_str();
        cmd->add_option("--svm-degree", svm.degree, "Polynomial kernel degree")->capture_default_str();
    }

    void AddSize(CLI::App* cmd) {
        cmd->add_option("--size", size, "Resize to size x size before extraction (0 keeps)")->capture_default_str();
    }

    DescriptorConfig Descriptor() const {
        DescriptorConfig cfg = descriptor;
        cfg.normalize = !noNormalize;
        return cfg;
    }
};

std::vector<int> ParseAngles(const std::string& text) {
    std::vector<int> angles;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            angles.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw InvalidArgument("bad angle '" + token + "'");
        }
    }
    return angles;
}

Image LoadSized(const std::string& path, int size) {
    Image img = LoadImage(path);
    return size > 0 ? Resize(img, size, size) : img;
}

void StoreDescriptorMeta(SvmModel& model, const DescriptorTable& table, int nmsWindow, int size) {
    auto& meta = model.Metadata();
    meta["kd"] = std::to_string(table.distanceBins);
    meta["ka"] = std::to_string(table.angleBins);
    meta["kc"] = std::to_string(table.colorBins);
    meta["normalize"] = table.normalized ? "1" : "0";
    meta["nms_window"] = std::to_string(nmsWindow);
    meta["size"] = std::to_string(size);
}

int MetaInt(const SvmModel& model, const std::string& key, int fallback) {
    auto it = model.Metadata().find(key);
    return it == model.Metadata().end() ? fallback : std::stoi(it->second);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Salient dither pattern features: extraction, training and evaluation"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string input;
    std::string output;

    // dither
    auto* ditherCmd = app.add_subcommand("dither", "Write the dithered reconstruction of an image");
    ditherCmd->add_option("input", input, "Input PPM")->required();
    ditherCmd->add_option("output", output, "Output PPM")->required();

    // visualize
    auto* visCmd = app.add_subcommand("visualize", "Overlay salient points, centroid and orientation");
    visCmd->add_option("input", input, "Input PPM")->required();
    visCmd->add_option("output", output, "Output PPM")->required();
    flags.AddDescriptor(visCmd);

    // extract
    auto* extractCmd = app.add_subcommand("extract", "Extract descriptors for a dataset directory");
    extractCmd->add_option("root", input, "Dataset root (one subdirectory per class)")->required();
    extractCmd->add_option("-o,--output", output, "Descriptor CSV")->required();
    flags.AddDescriptor(extractCmd);
    flags.AddSize(extractCmd);
    int workers = 0;
    extractCmd->add_option("--workers", workers, "Extraction threads (0 = all cores)");

    // train
    auto* trainCmd = app.add_subcommand("train", "Train the SVM on a descriptor CSV");
    trainCmd->add_option("descriptors", input, "Descriptor CSV")->required();
    trainCmd->add_option("-o,--output", output, "Model file")->required();
    uint64_t seed = 0;
    double fraction = 0.4;
    trainCmd->add_option("--seed", seed, "Split and solver seed")->capture_default_str();
    trainCmd->add_option("--fraction", fraction, "Per-class training fraction")->capture_default_str();
    flags.AddSvm(trainCmd);
    int trainNms = 5;
    int trainSize = 128;
    trainCmd->add_option("--nms-window", trainNms, "Suppression window used at extraction")->capture_default_str();
    trainCmd->add_option("--size", trainSize, "Resize used at extraction")->capture_default_str();

    // classify
    auto* classifyCmd = app.add_subcommand("classify", "Classify one image with a trained model");
    std::string modelPath;
    classifyCmd->add_option("model", modelPath, "Model file")->required();
    classifyCmd->add_option("image", input, "Input PPM")->required();

    // eval
    auto* evalCmd = app.add_subcommand("eval", "Split, train and report average precision");
    evalCmd->add_option("root", input, "Dataset root")->required();
    std::string augment;
    std::string testRotations = "0";
    int knnK = 1;
    evalCmd->add_option("--augment", augment, "Training rotations, e.g. 0,90,180,270");
    evalCmd->add_option("--test-rotations", testRotations, "Rotations applied to test queries")->capture_default_str();
    evalCmd->add_option("--seed", seed, "Split and solver seed")->capture_default_str();
    evalCmd->add_option("--fraction", fraction, "Per-class training fraction")->capture_default_str();
    evalCmd->add_option("--knn-k", knnK, "Neighbors for the k-NN baseline")->capture_default_str();
    evalCmd->add_option("--workers", workers, "Extraction threads (0 = all cores)");
    flags.AddDescriptor(evalCmd);
    flags.AddSvm(evalCmd);
    flags.AddSize(evalCmd);

    // bench
    auto* benchCmd = app.add_subcommand("bench", "Per-stage extraction timing as CSV");
    benchCmd->add_option("image", input, "Input PPM")->required();
    int reps = 100;
    int warmup = 10;
    benchCmd->add_option("--reps", reps, "Timed repetitions")->capture_default_str();
    benchCmd->add_option("--warmup", warmup, "Untimed warm-up runs")->capture_default_str();
    flags.AddDescriptor(benchCmd);
    flags.AddSize(benchCmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ditherCmd) {
            Image img = LoadImage(input);
            SaveImage(Reconstruct(Dither(img), DitherPalette::RgbCorners()), output);
        } else if (*visCmd) {
            Image img = LoadImage(input);
            ExtractionResult result = ExtractDetailed(img, flags.Descriptor());
            SaveImage(Visualize(img, result), output);
            std::cout << "salient points: " << result.points.size() << '\n';
        } else if (*extractCmd) {
            Dataset ds = IngestDataset(input);
            DescriptorConfig cfg = flags.Descriptor();
            std::vector<LabeledItem> items;
            for (size_t c = 0; c < ds.labels.size(); ++c) {
                for (const auto& path : ds.images[c]) items.push_back({path, static_cast<int>(c), 0});
            }
            auto values = ExtractAll(items, cfg, flags.size, workers);
            DescriptorTable table;
            table.distanceBins = cfg.distanceBins;
            table.angleBins = cfg.angleBins;
            table.colorBins = cfg.colorBins;
            table.normalized = cfg.normalize;
            for (size_t k = 0; k < items.size(); ++k) {
                table.records.push_back({items[k].path.string(), ds.labels[static_cast<size_t>(items[k].label)],
                                         std::move(values[k])});
            }
            SaveDescriptorTable(table, output);
            std::cout << "extracted " << table.records.size() << " descriptors of length " << table.Length() << '\n';
        } else if (*trainCmd) {
            DescriptorTable table = LoadDescriptorTable(input);
            std::map<std::string, std::vector<size_t>> byLabel;
            for (size_t k = 0; k < table.records.size(); ++k) byLabel[table.records[k].label].push_back(k);
            std::vector<std::string> labels;
            std::vector<size_t> sizes;
            for (const auto& [label, members] : byLabel) {
                labels.push_back(label);
                sizes.push_back(members.size());
            }
            MemberSplit split = SplitClassMembers(sizes, fraction, seed);
            std::vector<std::vector<double>> trainX, testX;
            std::vector<int> trainY, testY;
            for (const auto& [c, k] : split.train) {
                trainX.push_back(table.records[byLabel[labels[static_cast<size_t>(c)]][k]].values);
                trainY.push_back(c);
            }
            for (const auto& [c, k] : split.test) {
                testX.push_back(table.records[byLabel[labels[static_cast<size_t>(c)]][k]].values);
                testY.push_back(c);
            }
            SvmConfig svm = flags.svm;
            svm.seed = seed;
            SvmModel model = TrainSvm(trainX, trainY, labels, svm);
            StoreDescriptorMeta(model, table, trainNms, trainSize);
            SaveSvmModel(model, output);

            std::vector<int> predicted;
            for (const auto& x : testX) predicted.push_back(model.Predict(x));
            std::cout << "trained on " << trainX.size() << ", held out " << testX.size() << '\n';
            std::cout << "held-out AP " << FormatAveragePrecision(
                AveragePrecision(predicted, testY, static_cast<int>(labels.size()))) << '\n';
        } else if (*classifyCmd) {
            SvmModel model = LoadSvmModel(modelPath);
            DescriptorConfig cfg;
            cfg.distanceBins = MetaInt(model, "kd", cfg.distanceBins);
            cfg.angleBins = MetaInt(model, "ka", cfg.angleBins);
            cfg.colorBins = MetaInt(model, "kc", cfg.colorBins);
            cfg.normalize = MetaInt(model, "normalize", 1) != 0;
            cfg.nmsWindow = MetaInt(model, "nms_window", cfg.nmsWindow);
            Image img = LoadSized(input, MetaInt(model, "size", 128));
            SdpfDescriptor desc = Extract(img, cfg);
            std::cout << model.Labels()[static_cast<size_t>(model.Predict(desc.values))] << '\n';
        } else if (*evalCmd) {
            Dataset ds = IngestDataset(input);
            EvalOptions options;
            options.descriptor = flags.Descriptor();
            options.svm = flags.svm;
            options.svm.seed = seed;
            options.seed = seed;
            options.trainFraction = fraction;
            options.augmentAngles = ParseAngles(augment);
            options.testRotations = ParseAngles(testRotations);
            options.resize = flags.size;
            options.knnNeighbors = knnK;
            options.workers = workers;
            EvalReport report = Evaluate(ds, options);
            std::cout << "train " << report.trainCount << " test " << report.testCount << '\n';
            std::cout << "AP " << FormatAveragePrecision(report.svmAveragePrecision) << '\n';
            std::cout << "kNN AP " << FormatAveragePrecision(report.knnAveragePrecision) << '\n';
        } else if (*benchCmd) {
            Image img = LoadSized(input, flags.size);
            BenchReport report = RunBench(img, reps, warmup, flags.Descriptor());
            WriteBenchCsv(report, std::cout);
        }
    } catch (const Sdpf::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
