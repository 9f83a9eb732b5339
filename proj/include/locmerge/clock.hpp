#pragma once

#include <chrono>
#include <cstdint>
#include <thread>

// Injectable clocks. All harness timing goes through this interface so the
// budget machinery can run in microseconds under a virtual clock and in real
// time for the CLI.

namespace locmerge {

class Clock {
public:
    virtual ~Clock() = default;
    virtual std::int64_t now_ms() const = 0;
    virtual void advance_to(std::int64_t t_ms) = 0;
};

class VirtualClock final : public Clock {
public:
    std::int64_t now_ms() const override { return now_; }
    void advance_to(std::int64_t t_ms) override {
        if (t_ms > now_) now_ = t_ms;
    }

private:
    std::int64_t now_ = 0;
};

class WallClock final : public Clock {
public:
    WallClock() : epoch_(std::chrono::steady_clock::now()) {}

    std::int64_t now_ms() const override {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - epoch_)
            .count();
    }

    void advance_to(std::int64_t t_ms) override {
        std::this_thread::sleep_until(epoch_ + std::chrono::milliseconds(t_ms));
    }

private:
    std::chrono::steady_clock::time_point epoch_;
};

} // namespace locmerge
