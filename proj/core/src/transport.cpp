#include "netfuse/transport.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "netfuse/errors.hpp"

namespace netfuse {

void CommLedger::record_send(CommBucket bucket, std::uint64_t scalars,
                             std::uint64_t messages) {
  if (bucket == CommBucket::setup) {
    scalars_setup_ += scalars;
    messages_setup_ += messages;
  } else {
    scalars_iterate_ += scalars;
    messages_iterate_ += messages;
  }
  round_scalars_ += scalars;
  round_messages_ += messages;
}

int CommLedger::close_round(CommBucket bucket) {
  const int round = next_round_++;
  per_round_.push_back({round, bucket, round_scalars_, round_messages_});
  round_scalars_ = 0;
  round_messages_ = 0;
  return round;
}

RoundTransport::RoundTransport(std::vector<std::vector<int>> neighbors,
                               CommLedger& ledger, CommBucket bucket,
                               std::ostream* trace)
    : neighbors_(std::move(neighbors)),
      ledger_(&ledger),
      bucket_(bucket),
      trace_(trace),
      sent_this_round_(neighbors_.size(), false),
      pending_(neighbors_.size()),
      pending_counts_(neighbors_.size(), 0),
      delivered_(neighbors_.size()),
      delivered_counts_(neighbors_.size(), 0) {}

void RoundTransport::stash(int receiver, int sender,
                           const Eigen::VectorXd& payload) {
  std::vector<Message>& box = pending_[receiver];
  const std::size_t slot = pending_counts_[receiver]++;
  if (slot < box.size()) {
    box[slot].sender = sender;
    box[slot].payload = payload;  // same-size assign reuses the allocation
  } else {
    box.push_back({sender, payload});
  }
}

void RoundTransport::broadcast_to_neighbors(int node,
                                            const Eigen::VectorXd& payload) {
  if (!open_) {
    throw ProtocolError("broadcast after transport shutdown");
  }
  if (node < 0 || node >= node_count()) {
    throw ProtocolError("broadcast from unknown node " + std::to_string(node));
  }
  if (sent_this_round_[node]) {
    throw ProtocolError("node " + std::to_string(node) +
                        " broadcast twice in one round");
  }
  sent_this_round_[node] = true;
  for (int neighbor : neighbors_[node]) {
    stash(neighbor, node, payload);
  }
  ledger_->record_send(bucket_,
                       static_cast<std::uint64_t>(payload.size()) *
                           neighbors_[node].size(),
                       neighbors_[node].size());
}

int RoundTransport::close_round() {
  if (!open_) {
    throw ProtocolError("close_round after transport shutdown");
  }
  const int round = ledger_->close_round(bucket_);
  for (int node = 0; node < node_count(); ++node) {
    auto begin = pending_[node].begin();
    std::sort(begin, begin + pending_counts_[node],
              [](const Message& a, const Message& b) {
                return a.sender < b.sender;
              });
    std::swap(pending_[node], delivered_[node]);
    delivered_counts_[node] = pending_counts_[node];
    pending_counts_[node] = 0;
    sent_this_round_[node] = false;
  }
  if (trace_ != nullptr) {
    // Audit rows sorted by (sender, receiver): walk senders in id order and
    // look their message up in each neighbor's sorted inbox.
    for (int sender = 0; sender < node_count(); ++sender) {
      for (int receiver : neighbors_[sender]) {
        const auto box = inbox(receiver);
        const auto it = std::lower_bound(
            box.begin(), box.end(), sender,
            [](const Message& m, int id) { return m.sender < id; });
        if (it != box.end() && it->sender == sender) {
          *trace_ << round << ',' << sender << ',' << receiver << ','
                  << it->payload.size() << '\n';
        }
      }
    }
  }
  return round;
}

}  // namespace netfuse
