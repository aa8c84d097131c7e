#pragma once

#include <string>

// Runs f, expecting it to throw E; returns the exception message so tests can
// compare the exact user-facing wording.
template <class E, class F>
std::string thrown_message(F&& f) {
    try {
        f();
    } catch (const E& e) {
        return e.what();
    } catch (...) {
        return "[different exception type]";
    }
    return "[no exception]";
}
