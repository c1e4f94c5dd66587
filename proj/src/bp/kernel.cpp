#include "bpchess/bp/kernel.hpp"

#include <algorithm>
#include <stdexcept>

namespace bpchess::bp {
namespace {

std::uint64_t fnv1a(const std::vector<std::string>& names) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& n : names) {
    for (unsigned char c : n) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xFF;  // separator
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool blocked_by_any(std::span<const SyncStatement> statements, const Event& e) {
  return std::any_of(statements.begin(), statements.end(),
                     [&](const SyncStatement& s) { return s.blocked.contains(e); });
}

}  // namespace

Event Event::move(std::string san, std::uint32_t move_id, std::shared_ptr<const EventContext> context) {
  return Event(EventKind::Move, std::move(san), move_id, 0, std::move(context));
}

Event Event::increment(std::string reg, std::int64_t amount) {
  return Event(EventKind::Increment, std::move(reg), 0, amount, nullptr);
}

Event Event::set_state(std::string reg, std::int64_t value) {
  return Event(EventKind::SetState, std::move(reg), 0, value, nullptr);
}

std::string Event::to_string() const {
  switch (kind_) {
    case EventKind::Move: return "Move(" + name_ + ")";
    case EventKind::Increment: return "Increment(" + name_ + ", " + std::to_string(value_) + ")";
    case EventKind::SetState: return "SetState(" + name_ + ", " + std::to_string(value_) + ")";
  }
  return "?";
}

std::size_t BThread::add_register(std::string name, std::int64_t value, std::int64_t lo, std::int64_t hi) {
  registers_.push_back(Register{std::move(name), value, lo, hi});
  return registers_.size() - 1;
}

std::size_t BThread::register_index(const std::string& name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw std::out_of_range("b-thread '" + name_ + "' has no register '" + name + "'");
}

double KernelSnapshot::at(const std::string& name) const {
  for (std::size_t i = 0; i < names->size(); ++i) {
    if ((*names)[i] == name) return values[i];
  }
  throw std::out_of_range("snapshot has no register '" + name + "'");
}

KernelError::KernelError(std::string thread, std::vector<Event> trace, const std::string& what)
    : std::runtime_error(what), thread_(std::move(thread)), trace_(std::move(trace)) {}

std::optional<Event> select_event(std::span<const SyncStatement> statements) {
  // Two passes: internal events first, then moves.
  for (const bool internal : {true, false}) {
    for (const SyncStatement& s : statements) {
      for (const Event& e : s.requested) {
        if (e.is_internal() != internal) continue;
        if (!blocked_by_any(statements, e)) return e;
      }
    }
  }
  return std::nullopt;
}

Kernel::Kernel(const Kernel& other)
    : statements_(other.statements_),
      names_(other.names_),
      schema_id_(other.schema_id_),
      started_(other.started_) {
  threads_.reserve(other.threads_.size());
  for (const auto& t : other.threads_) threads_.push_back(t->clone());
}

Kernel& Kernel::operator=(const Kernel& other) {
  if (this != &other) *this = Kernel(other);
  return *this;
}

std::size_t Kernel::add(std::unique_ptr<BThread> thread) {
  if (started_) throw std::invalid_argument("cannot register b-thread '" + thread->name() + "' after start");
  for (const auto& t : threads_) {
    if (t->name() == thread->name()) {
      throw std::invalid_argument("duplicate b-thread name '" + thread->name() + "'");
    }
  }
  threads_.push_back(std::move(thread));
  return threads_.size() - 1;
}

void Kernel::start() {
  if (started_) return;
  std::vector<std::string> names;
  for (const auto& t : threads_) {
    for (const auto& r : t->registers()) names.push_back(r.name);
  }
  schema_id_ = fnv1a(names);
  names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
  statements_.clear();
  for (const auto& t : threads_) {
    try {
      statements_.push_back(t->step(nullptr));
    } catch (const std::exception& e) {
      throw KernelError(t->name(), {}, "b-thread '" + t->name() + "' failed at start: " + e.what());
    }
  }
  started_ = true;
}

void Kernel::refresh(std::size_t i) {
  start();
  statements_.at(i) = threads_.at(i)->step(nullptr);
}

BThread& Kernel::thread(const std::string& name) {
  for (auto& t : threads_) {
    if (t->name() == name) return *t;
  }
  throw std::out_of_range("no b-thread named '" + name + "'");
}

std::vector<Event> Kernel::super_step() {
  start();
  std::vector<Event> trace;
  while (auto chosen = select_event(statements_)) {
    trace.push_back(*chosen);
    // Decide recipients against the statements in force at selection time.
    std::vector<std::size_t> recipients;
    for (std::size_t i = 0; i < statements_.size(); ++i) {
      const SyncStatement& s = statements_[i];
      const bool requested = std::find(s.requested.begin(), s.requested.end(), *chosen) != s.requested.end();
      if (requested || s.watched.contains(*chosen)) recipients.push_back(i);
    }
    for (std::size_t i : recipients) {
      try {
        statements_[i] = threads_[i]->step(&trace.back());
      } catch (const std::exception& e) {
        std::string what = "b-thread '" + threads_[i]->name() + "' failed on " + chosen->to_string() + ": " +
                           e.what() + "; trace so far:";
        for (const auto& ev : trace) what += " " + ev.to_string();
        throw KernelError(threads_[i]->name(), trace, what);
      }
    }
  }
  return trace;
}

KernelSnapshot Kernel::snapshot() {
  start();
  KernelSnapshot snap;
  snap.names = names_;
  snap.schema_id = schema_id_;
  snap.values.reserve(names_->size());
  for (const auto& t : threads_) {
    for (const auto& r : t->registers()) snap.values.push_back(static_cast<double>(r.value));
  }
  return snap;
}

}  // namespace bpchess::bp
