#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "evsnn/network.hpp"

namespace evsnn::testing {

inline Network make_net(std::initializer_list<NeuronSpec> neurons, std::initializer_list<SynapseSpec> synapses = {})
{
    Network net;
    net.neurons = neurons;
    net.synapses = synapses;
    return net;
}

inline NeuronSpec neuron(NeuronId id, std::int64_t threshold, bool leak = false)
{
    return {id, threshold, leak, std::nullopt};
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir()
    {
        static std::atomic<int> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("evsnn_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path_ / name).string(); }
    std::string write(const std::string& name, const std::string& content) const
    {
        std::ofstream(file(name), std::ios::binary) << content;
        return file(name);
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace evsnn::testing
