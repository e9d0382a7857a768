#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpm {

using NodeId = std::string;
using CaseId = std::string;
using Activity = std::string;
/// Global logical clock tick. The generator hands out 1, 2, 3, ...
using Timestamp = std::uint64_t;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Negative payload handed to a cost function.
class InvalidPayload : public Error {
public:
    using Error::Error;
};

/// Unknown method tag, bad preset name, malformed config document.
class ConfigError : public Error {
public:
    using Error::Error;
};

class TopologyError : public Error {
public:
    using Error::Error;
};

/// A send was issued to a peer the sender has no send instruction for.
class UnreachablePeer : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

/// The stream and the topology (or two presets) disagree about locations.
class WorkloadMismatch : public Error {
public:
    using Error::Error;
};

struct Event {
    CaseId case_id;
    Activity activity;
    Timestamp timestamp = 0;
    NodeId location;

    friend bool operator==(const Event&, const Event&) = default;
};

/// Events emitted at one location, ascending by timestamp.
struct LocalizedEventStream {
    NodeId location;
    std::vector<Event> events;

    friend bool operator==(const LocalizedEventStream&, const LocalizedEventStream&) = default;
};

/// A global stream partitioned by location. Merging the parts back by
/// timestamp yields the original, totally ordered stream.
class DistributedEventStream {
public:
    DistributedEventStream() = default;

    /// Partitions a globally ordered event sequence. Throws WorkloadMismatch
    /// if timestamps are not strictly increasing.
    static DistributedEventStream from_events(const std::vector<Event>& events);

    const std::map<NodeId, LocalizedEventStream>& streams() const { return streams_; }
    std::vector<Event> merged() const;
    std::size_t size() const;
    bool empty() const { return size() == 0; }

    friend bool operator==(const DistributedEventStream&, const DistributedEventStream&) = default;

private:
    std::map<NodeId, LocalizedEventStream> streams_;
};

}  // namespace dpm
