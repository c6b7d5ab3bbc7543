#pragma once

#include <stdexcept>
#include <string>

namespace hyperconn {

/// An exact routine was asked for an instance beyond its configured scale.
class ScaleGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The hypergraph process ran out of potential edges before an event occurred.
class UnreachableEvent : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyperconn
