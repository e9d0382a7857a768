#include "dpm/types.hpp"

#include <algorithm>
#include <string>

namespace dpm {

DistributedEventStream DistributedEventStream::from_events(const std::vector<Event>& events) {
    DistributedEventStream out;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (i > 0 && e.timestamp <= events[i - 1].timestamp) {
            throw WorkloadMismatch("event timestamps must be strictly increasing (at position " + std::to_string(i) +
                                   ")");
        }
        auto& stream = out.streams_[e.location];
        stream.location = e.location;
        stream.events.push_back(e);
    }
    return out;
}

std::vector<Event> DistributedEventStream::merged() const {
    std::vector<Event> all;
    all.reserve(size());
    for (const auto& [loc, stream] : streams_) {
        all.insert(all.end(), stream.events.begin(), stream.events.end());
    }
    std::sort(all.begin(), all.end(), [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
    return all;
}

std::size_t DistributedEventStream::size() const {
    std::size_t n = 0;
    for (const auto& [loc, stream] : streams_) n += stream.events.size();
    return n;
}

}  // namespace dpm
