#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bpchess::bp {

/// Opaque data attached to an event (e.g. the boards around a move).
/// Never part of event identity.
struct EventContext {
  virtual ~EventContext() = default;
};

enum class EventKind : std::uint8_t { Move, Increment, SetState };

/// Move: name = SAN, id = resolved move id.
/// Increment: name = register, value = amount.
/// SetState: name = register, value = new enum/state value.
class Event {
 public:
  static Event move(std::string san, std::uint32_t move_id, std::shared_ptr<const EventContext> context = {});
  static Event increment(std::string reg, std::int64_t amount = 1);
  static Event set_state(std::string reg, std::int64_t value);

  EventKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  std::uint32_t move_id() const { return move_id_; }
  std::int64_t value() const { return value_; }
  const EventContext* context() const { return context_.get(); }
  bool is_internal() const { return kind_ != EventKind::Move; }

  std::string to_string() const;

  friend bool operator==(const Event& a, const Event& b) {
    return a.kind_ == b.kind_ && a.name_ == b.name_ && a.move_id_ == b.move_id_ && a.value_ == b.value_;
  }

 private:
  Event(EventKind kind, std::string name, std::uint32_t move_id, std::int64_t value,
        std::shared_ptr<const EventContext> context)
      : kind_(kind), name_(std::move(name)), move_id_(move_id), value_(value), context_(std::move(context)) {}

  EventKind kind_;
  std::string name_;
  std::uint32_t move_id_ = 0;
  std::int64_t value_ = 0;
  std::shared_ptr<const EventContext> context_;
};

/// Named membership predicate over events.
class EventSet {
 public:
  EventSet() : EventSet("none", [](const Event&) { return false; }) {}
  EventSet(std::string name, std::function<bool(const Event&)> predicate)
      : name_(std::move(name)), predicate_(std::move(predicate)) {}

  static EventSet none() { return {}; }
  static EventSet all_moves() {
    return {"any-move", [](const Event& e) { return e.kind() == EventKind::Move; }};
  }

  bool contains(const Event& e) const { return predicate_(e); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  std::function<bool(const Event&)> predicate_;
};

struct SyncStatement {
  std::vector<Event> requested;
  EventSet watched;
  EventSet blocked;
};

/// A named numeric cell a b-thread exposes to snapshots, with its
/// documented inclusive range.
struct Register {
  std::string name;
  std::int64_t value = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// Resumable behaviour unit. `step(&e)` is called with every selected event
/// the thread requested or watched and returns the next synchronisation
/// point. `step(nullptr)` re-declares the current synchronisation point
/// without consuming an event; it must not change registers.
class BThread {
 public:
  explicit BThread(std::string name) : name_(std::move(name)) {}
  virtual ~BThread() = default;

  const std::string& name() const { return name_; }
  const std::vector<Register>& registers() const { return registers_; }

  virtual SyncStatement step(const Event* last) = 0;
  virtual std::unique_ptr<BThread> clone() const = 0;

 protected:
  BThread(const BThread&) = default;
  BThread& operator=(const BThread&) = default;

  std::size_t add_register(std::string name, std::int64_t value, std::int64_t lo, std::int64_t hi);
  Register& reg(std::size_t i) { return registers_[i]; }
  /// Index of a register by name; throws std::out_of_range.
  std::size_t register_index(const std::string& name) const;

 private:
  std::string name_;
  std::vector<Register> registers_;
};

struct KernelSnapshot {
  std::shared_ptr<const std::vector<std::string>> names;
  std::vector<double> values;
  std::uint64_t schema_id = 0;

  std::size_t size() const { return values.size(); }
  /// Value by register name; throws std::out_of_range.
  double at(const std::string& name) const;

  friend bool operator==(const KernelSnapshot& a, const KernelSnapshot& b) {
    return a.schema_id == b.schema_id && a.values == b.values;
  }
};

/// Raised when a b-thread throws inside step().
class KernelError : public std::runtime_error {
 public:
  KernelError(std::string thread, std::vector<Event> trace, const std::string& what);
  const std::string& thread() const { return thread_; }
  const std::vector<Event>& trace() const { return trace_; }

 private:
  std::string thread_;
  std::vector<Event> trace_;
};

/// Chooses a requested, unblocked event. Internal events outrank moves;
/// ties go to the earliest statement, then the earliest request in it.
/// nullopt means deadlock.
std::optional<Event> select_event(std::span<const SyncStatement> statements);

/// Sequential behavioural-programming runtime.
class Kernel {
 public:
  Kernel() = default;
  Kernel(const Kernel& other);
  Kernel& operator=(const Kernel& other);
  Kernel(Kernel&&) noexcept = default;
  Kernel& operator=(Kernel&&) noexcept = default;

  /// Adds a b-thread; returns its registration position. Throws
  /// std::invalid_argument on a duplicate name or after start().
  std::size_t add(std::unique_ptr<BThread> thread);

  /// Collects every thread's first synchronisation point. Implicit on the
  /// first super_step() or snapshot().
  void start();
  bool started() const { return started_; }

  /// Re-reads thread i's synchronisation point, after its owner changed it
  /// from outside (e.g. queued a move).
  void refresh(std::size_t i);

  /// Selects and delivers events until deadlock; returns the event trace.
  std::vector<Event> super_step();

  KernelSnapshot snapshot();

  /// Deep copy; the two kernels share nothing mutable.
  Kernel fork() const { return Kernel(*this); }

  std::size_t size() const { return threads_.size(); }
  BThread& thread(std::size_t i) { return *threads_[i]; }
  const BThread& thread(std::size_t i) const { return *threads_[i]; }
  /// Thread by name; throws std::out_of_range.
  BThread& thread(const std::string& name);

  template <typename T>
  T& get(const std::string& name) {
    return dynamic_cast<T&>(thread(name));
  }

 private:
  std::vector<std::unique_ptr<BThread>> threads_;
  std::vector<SyncStatement> statements_;
  std::shared_ptr<const std::vector<std::string>> names_;
  std::uint64_t schema_id_ = 0;
  bool started_ = false;
};

}  // namespace bpchess::bp
