#include "pir/wire.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <mutex>

#include "pir/error.hpp"
#include "pir/formats.hpp"

namespace pir {

namespace {

constexpr char kMagic[4] = {'P', 'I', 'R', '1'};
constexpr std::uint64_t kMaxPayload = 1ull << 30;

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_u64(const std::uint8_t* b) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const Frame& f) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(static_cast<std::uint8_t>(f.type));
  put_u64(out, f.payload.size());
  out.insert(out.end(), f.payload.begin(), f.payload.end());
  return out;
}

Frame decode_frame(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 13) fail(Err::ParseError, "short frame header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) fail(Err::ParseError, "bad frame magic");
  const std::uint8_t type = bytes[4];
  const std::uint64_t len = get_u64(bytes.data() + 5);
  if (len > kMaxPayload) fail(Err::ParseError, "payload too large");
  if (bytes.size() != 13 + len) fail(Err::ParseError, "payload length mismatch");
  Frame f;
  f.type = static_cast<MsgType>(type);
  f.payload.assign(bytes.begin() + 13, bytes.end());
  return f;
}

Frame error_frame(const std::string& reason) {
  Frame f;
  f.type = MsgType::kError;
  f.payload.assign(reason.begin(), reason.end());
  return f;
}

Frame db_info_frame(const DbInfo& info) {
  Frame f;
  f.type = MsgType::kDbInfo;
  put_u64(f.payload, info.t);
  put_u64(f.payload, info.L);
  put_u64(f.payload, info.r);
  put_u64(f.payload, info.m_prime);
  return f;
}

DbInfo parse_db_info(const Frame& f) {
  if (f.type != MsgType::kDbInfo || f.payload.size() != 32)
    fail(Err::ParseError, "not a DB_INFO frame");
  return {get_u64(f.payload.data()), get_u64(f.payload.data() + 8),
          get_u64(f.payload.data() + 16), get_u64(f.payload.data() + 24)};
}

std::vector<std::uint8_t> handle_frame_bytes(const Database& db,
                                             const std::vector<std::uint8_t>& bytes) {
  try {
    Frame f = decode_frame(bytes);
    switch (f.type) {
      case MsgType::kQuery: {
        MatrixFileData q = parse_matrix(f.payload);
        if (q.values.rows() != db.entries.cols())
          return encode_frame(error_frame("row count"));
        if (db.m_prime > q.modulus || q.modulus % db.m_prime != 0)
          return encode_frame(error_frame("modulus incompatible with database alphabet"));
        ResponseMatrix r = server_respond(db, {q.values, q.modulus});
        Frame resp;
        resp.type = MsgType::kResponse;
        resp.payload = serialize_matrix({r.rows, r.modulus});
        return encode_frame(resp);
      }
      case MsgType::kDbInfoReq:
        return encode_frame(db_info_frame({static_cast<std::uint64_t>(db.t),
                                           static_cast<std::uint64_t>(db.rows()),
                                           static_cast<std::uint64_t>(db.file_cols()),
                                           db.m_prime}));
      case MsgType::kResponse:
      case MsgType::kDbInfo:
      case MsgType::kError:
        return encode_frame(error_frame("unexpected message type"));
    }
    return encode_frame(error_frame("unknown message type"));
  } catch (const Error& err) {
    return encode_frame(error_frame(err.what()));
  } catch (const std::exception& ex) {
    return encode_frame(error_frame(ex.what()));
  }
}

// ---- sockets ----

namespace {

bool read_exact(int fd, std::uint8_t* buf, size_t count) {
  size_t got = 0;
  while (got < count) {
    ssize_t k = ::recv(fd, buf + got, count - got, 0);
    if (k <= 0) return false;
    got += static_cast<size_t>(k);
  }
  return true;
}

bool write_all(int fd, const std::uint8_t* buf, size_t count) {
  size_t sent = 0;
  while (sent < count) {
    ssize_t k = ::send(fd, buf + sent, count - sent, MSG_NOSIGNAL);
    if (k <= 0) return false;
    sent += static_cast<size_t>(k);
  }
  return true;
}

// reads a full frame (header first, then payload); false on EOF,
// sets malformed when the header cannot be trusted
bool read_frame_bytes(int fd, std::vector<std::uint8_t>& out, bool& malformed) {
  malformed = false;
  std::uint8_t header[13];
  if (!read_exact(fd, header, 13)) return false;
  if (std::memcmp(header, kMagic, 4) != 0) {
    malformed = true;
    return true;
  }
  const std::uint64_t len = get_u64(header + 5);
  if (len > kMaxPayload) {
    malformed = true;
    return true;
  }
  out.assign(header, header + 13);
  out.resize(13 + len);
  if (len > 0 && !read_exact(fd, out.data() + 13, len)) {
    malformed = true;  // truncated payload
    return true;
  }
  return true;
}

}  // namespace

Server::Server(Database db, const std::string& host, std::uint16_t port) : db_(std::move(db)) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) fail(Err::IoError, "socket() failed");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    fail(Err::IoError, "bad bind address: " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 16) != 0) {
    ::close(listen_fd_);
    fail(Err::IoError, "bind/listen failed on " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void Server::accept_loop() {
  for (;;) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (stopping_) return;
      continue;
    }
    std::scoped_lock lock(workers_mutex_);
    workers_.emplace_back([this, fd] {
      std::vector<std::uint8_t> frame;
      bool malformed = false;
      while (read_frame_bytes(fd, frame, malformed)) {
        if (malformed) {
          auto err = encode_frame(error_frame("short payload"));
          write_all(fd, err.data(), err.size());
          break;  // cannot resync after a broken header
        }
        auto reply = handle_frame_bytes(db_, frame);
        if (!write_all(fd, reply.data(), reply.size())) break;
      }
      ::close(fd);
    });
  }
}

void Server::stop() {
  if (stopping_.exchange(true)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (accept_thread_.joinable()) accept_thread_.join();
  std::scoped_lock lock(workers_mutex_);
  for (auto& w : workers_)
    if (w.joinable()) w.join();
}

Server::~Server() { stop(); }

Frame wire_roundtrip(const std::string& host, std::uint16_t port, const Frame& request) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) fail(Err::IoError, "socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    fail(Err::IoError, "bad host: " + host);
  }
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    fail(Err::IoError, "connect failed to " + host + ":" + std::to_string(port));
  }
  auto bytes = encode_frame(request);
  if (!write_all(fd, bytes.data(), bytes.size())) {
    ::close(fd);
    fail(Err::IoError, "send failed");
  }
  std::vector<std::uint8_t> reply;
  bool malformed = false;
  if (!read_frame_bytes(fd, reply, malformed) || malformed) {
    ::close(fd);
    fail(Err::IoError, "no valid reply frame");
  }
  ::close(fd);
  return decode_frame(reply);
}

}  // namespace pir
