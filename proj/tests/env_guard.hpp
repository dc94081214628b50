#pragma once

#include <cstdlib>
#include <optional>
#include <string>

// Sets EISENSTEIN_THREADS for the lifetime of the guard.
class ThreadsGuard {
public:
    explicit ThreadsGuard(unsigned n) {
        if (const char* old = std::getenv("EISENSTEIN_THREADS")) old_ = old;
        setenv("EISENSTEIN_THREADS", std::to_string(n).c_str(), 1);
    }
    ~ThreadsGuard() {
        if (old_)
            setenv("EISENSTEIN_THREADS", old_->c_str(), 1);
        else
            unsetenv("EISENSTEIN_THREADS");
    }
    ThreadsGuard(const ThreadsGuard&) = delete;
    ThreadsGuard& operator=(const ThreadsGuard&) = delete;

private:
    std::optional<std::string> old_;
};
