#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include "pir/pir.hpp"

namespace pir {

/// Length-prefixed frames: 4-byte magic "PIR1", 1-byte message type,
/// little-endian u64 payload length, payload. QUERY and RESPONSE carry a
/// serialized matrix file; ERROR carries UTF-8 text; DB_INFO carries t, L,
/// r, m' as four u64.
enum class MsgType : std::uint8_t {
  kQuery = 0x01,
  kResponse = 0x02,
  kError = 0x03,
  kDbInfoReq = 0x04,
  kDbInfo = 0x05,
};

struct Frame {
  MsgType type = MsgType::kError;
  std::vector<std::uint8_t> payload;
  bool operator==(const Frame&) const = default;
};

struct DbInfo {
  std::uint64_t t = 0, L = 0, r = 0, m_prime = 0;
};

std::vector<std::uint8_t> encode_frame(const Frame& f);

/// Strict decode of one complete frame; throws ParseError on anything off.
Frame decode_frame(const std::vector<std::uint8_t>& bytes);

Frame error_frame(const std::string& reason);
Frame db_info_frame(const DbInfo& info);
DbInfo parse_db_info(const Frame& f);

/// The server's brain, factored out of the socket loop: takes raw bytes of
/// one frame, answers with a RESPONSE / DB_INFO / ERROR frame. Never
/// throws; malformed or adversarial input yields an ERROR frame.
std::vector<std::uint8_t> handle_frame_bytes(const Database& db,
                                             const std::vector<std::uint8_t>& bytes);

/// Blocking TCP server over an immutable database; one thread per
/// connection, one in-flight request per connection.
class Server {
 public:
  Server(Database db, const std::string& host, std::uint16_t port);
  ~Server();

  std::uint16_t port() const { return port_; }
  void stop();

 private:
  void accept_loop();

  Database db_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::thread accept_thread_;
  std::vector<std::thread> workers_;
  std::mutex workers_mutex_;
};

/// Client side: one frame out, one frame back.
Frame wire_roundtrip(const std::string& host, std::uint16_t port, const Frame& request);

}  // namespace pir
