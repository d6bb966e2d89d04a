#pragma once

#include <cassert>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace capradii {

// Ordered record of every guess (index guesses, case guesses) made in one
// trial. Replaying a trace reproduces the trial bit for bit.
struct GuessTrace {
    struct Step {
        uint32_t choice;
        uint32_t options;
    };
    std::vector<Step> steps;
};

// Decision source for one trial. Phase implementations call choose(n) at
// every guess point with n >= 1 options; whether the guess is random, a
// replay, or part of an exhaustive sweep is the chooser's business.
class Chooser {
  public:
    virtual ~Chooser() = default;
    virtual uint32_t choose(uint32_t n) = 0;
    const GuessTrace& trace() const { return trace_; }

  protected:
    GuessTrace trace_;
};

class RandomChooser final : public Chooser {
  public:
    explicit RandomChooser(std::mt19937_64& rng) : rng_(&rng) {}
    uint32_t choose(uint32_t n) override {
        assert(n >= 1);
        const uint32_t c =
            std::uniform_int_distribution<uint32_t>(0, n - 1)(*rng_);
        trace_.steps.push_back({c, n});
        return c;
    }

  private:
    std::mt19937_64* rng_;
};

// Replays a recorded (or hand-built) trace; used to force specific guesses.
class ReplayChooser final : public Chooser {
  public:
    explicit ReplayChooser(GuessTrace source) : source_(std::move(source)) {}
    uint32_t choose(uint32_t n) override {
        if (pos_ >= source_.steps.size())
            throw std::out_of_range("replay trace exhausted");
        const uint32_t c = source_.steps[pos_++].choice;
        if (c >= n) throw std::out_of_range("replay choice out of range");
        trace_.steps.push_back({c, n});
        return c;
    }

  private:
    GuessTrace source_;
    size_t pos_ = 0;
};

// Depth-first sweep over a whole decision tree. Each run re-executes the
// trial following the stored prefix and takes option 0 at fresh decision
// points; advance() moves the prefix to the next unexplored branch. A run
// that aborts early (failed or pruned trial) truncates the prefix at the
// abort depth, which skips exactly the pruned subtree.
class ExhaustiveChooser final : public Chooser {
  public:
    void begin_run() {
        pos_ = 0;
        trace_.steps.clear();
    }

    uint32_t choose(uint32_t n) override {
        assert(n >= 1);
        uint32_t c;
        if (pos_ < prefix_.size()) {
            assert(prefix_[pos_].options == n && "trial is not prefix-deterministic");
            c = prefix_[pos_].choice;
        } else {
            prefix_.push_back({0, n});
            c = 0;
        }
        ++pos_;
        trace_.steps.push_back({c, n});
        return c;
    }

    // Returns false once the whole tree has been swept.
    bool advance() {
        prefix_.resize(pos_);
        while (!prefix_.empty() &&
               prefix_.back().choice + 1 >= prefix_.back().options)
            prefix_.pop_back();
        if (prefix_.empty()) return false;
        ++prefix_.back().choice;
        return true;
    }

  private:
    std::vector<GuessTrace::Step> prefix_;
    size_t pos_ = 0;
};

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Counter-based seed fan-out so parallel runs match serial runs.
inline std::mt19937_64 rng_for(uint64_t seed, uint64_t stream) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(stream)));
}

}  // namespace capradii
