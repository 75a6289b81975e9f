#pragma once

// Future event list with a strict (time, sequence) ordering contract:
// ties in simulated time are processed in insertion order and the clock
// never goes backwards.

#include <cstdint>
#include <queue>
#include <vector>

#include "edgecast/errors.hpp"

namespace edgecast::sim {

enum class EventKind : std::uint8_t { arrival, admit, complete };

struct Event {
  double t = 0.0;
  std::uint64_t seq = 0;
  EventKind kind = EventKind::arrival;
  std::uint64_t req = 0;
  std::uint32_t node = 0;
};

class EventQueue {
 public:
  void push(double t, EventKind kind, std::uint64_t req, std::uint32_t node = 0) {
    heap_.push(Event{t, next_seq_++, kind, req, node});
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  const Event& top() const { return heap_.top(); }

  Event pop() {
    Event e = heap_.top();
    heap_.pop();
    if (e.t < last_t_) {
      throw std::logic_error("event queue: simulated time went backwards");
    }
    last_t_ = e.t;
    return e;
  }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.t != b.t) return a.t > b.t;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  double last_t_ = 0.0;
};

}  // namespace edgecast::sim
