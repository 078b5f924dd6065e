#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace netfuse {

/// Which phase of a run a transmission belongs to. The one-time exchange of
/// local OLS estimates is "setup"; the per-iteration beta exchange is
/// "iterate". Keeping the buckets apart lets reports state per-iteration and
/// total costs separately.
enum class CommBucket { setup, iterate };

struct RoundRecord {
  int round = 0;
  CommBucket bucket = CommBucket::iterate;
  std::uint64_t scalars = 0;
  std::uint64_t messages = 0;
};

/// Cumulative communication accounting. One ledger can serve several
/// transports (setup and iterate phases of the same run); rounds are
/// numbered globally in the order they close.
class CommLedger {
 public:
  std::uint64_t scalars_sent() const { return scalars_setup_ + scalars_iterate_; }
  std::uint64_t messages_sent() const { return messages_setup_ + messages_iterate_; }
  std::uint64_t scalars(CommBucket b) const {
    return b == CommBucket::setup ? scalars_setup_ : scalars_iterate_;
  }
  std::uint64_t messages(CommBucket b) const {
    return b == CommBucket::setup ? messages_setup_ : messages_iterate_;
  }
  const std::vector<RoundRecord>& per_round() const { return per_round_; }

 private:
  friend class RoundTransport;

  void record_send(CommBucket bucket, std::uint64_t scalars,
                   std::uint64_t messages);
  int close_round(CommBucket bucket);

  std::uint64_t scalars_setup_ = 0;
  std::uint64_t scalars_iterate_ = 0;
  std::uint64_t messages_setup_ = 0;
  std::uint64_t messages_iterate_ = 0;
  std::uint64_t round_scalars_ = 0;
  std::uint64_t round_messages_ = 0;
  int next_round_ = 0;
  std::vector<RoundRecord> per_round_;
};

/// One delivered message: sender id and payload.
struct Message {
  int sender = -1;
  Eigen::VectorXd payload;
};

/// Synchronous round-based message passing along a fixed topology. A message
/// sent in round t is readable only after close_round() ends round t, and
/// only until the next round closes. Inboxes are sorted by sender id, so
/// delivery order is deterministic. Buffers are recycled across rounds, so
/// steady-state operation does not allocate.
class RoundTransport {
 public:
  /// `neighbors` is the active topology (tree or full graph) as sorted
  /// adjacency lists. `trace`, when given, receives one
  /// "round,sender,receiver,scalar_count" line per delivery.
  RoundTransport(std::vector<std::vector<int>> neighbors, CommLedger& ledger,
                 CommBucket bucket, std::ostream* trace = nullptr);

  /// Enqueues `payload` to every topology neighbor of `node`. Ledger grows
  /// by degree(node) * payload.size() scalars and degree(node) messages.
  /// Throws ProtocolError after shutdown or on a second broadcast from the
  /// same node within one round.
  void broadcast_to_neighbors(int node, const Eigen::VectorXd& payload);

  /// Delivers all outboxes and opens the next round. Returns the global id
  /// of the round just closed.
  int close_round();

  /// Messages delivered by the last close_round(), sorted by sender.
  std::span<const Message> inbox(int node) const {
    return {delivered_[node].data(), delivered_counts_[node]};
  }

  /// Permanently closes the transport; further sends are protocol errors.
  void shutdown() { open_ = false; }

  int node_count() const { return static_cast<int>(neighbors_.size()); }
  const std::vector<std::vector<int>>& neighbors() const { return neighbors_; }
  const CommLedger& ledger() const { return *ledger_; }

 private:
  void stash(int receiver, int sender, const Eigen::VectorXd& payload);

  std::vector<std::vector<int>> neighbors_;
  CommLedger* ledger_;
  CommBucket bucket_;
  std::ostream* trace_;
  bool open_ = true;
  std::vector<bool> sent_this_round_;
  std::vector<std::vector<Message>> pending_;
  std::vector<std::size_t> pending_counts_;
  std::vector<std::vector<Message>> delivered_;
  std::vector<std::size_t> delivered_counts_;
};

}  // namespace netfuse
