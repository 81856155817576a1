// Copyright 2026 The orbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "orbench/execution_sandbox.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <condition_variable>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <mutex>
#include <thread>

#include "orbench/text_util.hpp"

namespace orbench {
namespace {

constexpr std::string_view kFound =
    "Execution Successful and Best Solution Found";
constexpr std::string_view kNoBest =
    "Execution Successful but No Best Solution Found";
constexpr std::string_view kOutOfExpectation =
    "Execution Successful but Out of Expectation";
constexpr std::string_view kOutOfExpectationLegacy =
    "Execution Suceessful but Out of Expectation";
constexpr std::string_view kFailedPrefix = "Execution Failed: ";
constexpr std::string_view kTimeout = "Execution Failed: Timeout";
constexpr std::string_view kNoCode = "Execution Failed: No code";
constexpr std::string_view kNoBestSolution = "No Best Solution";

using Clock = std::chrono::steady_clock;

std::string sys_error(const std::string& what) {
  return what + ": " + std::strerror(errno);
}

// Removes a path tree on scope exit.
struct PathGuard {
  std::filesystem::path path;
  ~PathGuard() {
    std::error_code ec;
    if (!path.empty()) std::filesystem::remove_all(path, ec);
  }
};

struct FdGuard {
  int fd = -1;
  ~FdGuard() { reset(); }
  void reset() {
    if (fd >= 0) ::close(fd);
    fd = -1;
  }
};

// Minimal environment for the child.
std::vector<std::string> child_environment(const SandboxConfig& config,
                                           const std::filesystem::path& home) {
  std::vector<std::string> env;
  const char* path = std::getenv("PATH");
  env.push_back(std::string("PATH=") +
                (path ? path : "/usr/local/bin:/usr/bin:/bin"));
  if (!config.module_search_path.empty()) {
    std::string pp = "PYTHONPATH=";
    for (std::size_t i = 0; i < config.module_search_path.size(); ++i) {
      if (i) pp += ':';
      pp += std::filesystem::absolute(config.module_search_path[i]).string();
    }
    env.push_back(std::move(pp));
  }
  env.push_back("HOME=" + home.string());
  env.push_back("LANG=C.UTF-8");
  env.push_back("PYTHONIOENCODING=utf-8");
  env.push_back("PYTHONUNBUFFERED=1");
  env.push_back("PYTHONDONTWRITEBYTECODE=1");
  return env;
}

}  // namespace

bool ExecutionState::succeeded() const {
  return status == ExecutionStatus::BestSolutionFound ||
         status == ExecutionStatus::NoBestSolutionFound ||
         status == ExecutionStatus::OutOfExpectation;
}

std::string ExecutionState::render(bool legacy_spelling) const {
  switch (status) {
    case ExecutionStatus::BestSolutionFound:
      return std::string(kFound);
    case ExecutionStatus::NoBestSolutionFound:
      return std::string(kNoBest);
    case ExecutionStatus::OutOfExpectation:
      return std::string(legacy_spelling ? kOutOfExpectationLegacy
                                        : kOutOfExpectation);
    case ExecutionStatus::Timeout:
      return std::string(kTimeout);
    case ExecutionStatus::Failed:
      return std::string(kFailedPrefix) + message;
    case ExecutionStatus::NoCode:
      return std::string(kNoCode);
  }
  return {};
}

std::optional<ExecutionState> ExecutionState::parse(std::string_view s) {
  if (s == kFound) return of(ExecutionStatus::BestSolutionFound);
  if (s == kNoBest) return of(ExecutionStatus::NoBestSolutionFound);
  if (s == kOutOfExpectation || s == kOutOfExpectationLegacy) {
    return of(ExecutionStatus::OutOfExpectation);
  }
  if (s == kTimeout) return of(ExecutionStatus::Timeout);
  if (s == kNoCode) return of(ExecutionStatus::NoCode);
  if (s.starts_with(kFailedPrefix)) {
    return failed(std::string(s.substr(kFailedPrefix.size())));
  }
  return std::nullopt;
}

nlohmann::ordered_json execution_fields(const ExecutionRecord& r,
                                        bool legacy_spelling,
                                        bool include_timing) {
  nlohmann::ordered_json j;
  if (r.state.status == ExecutionStatus::NoCode) {
    j["execution_result"] = std::string(kNoCode);
  } else {
    j["execution_result"] = r.raw_output;
  }
  j["execution_best_solution"] = r.best_solution
                                     ? nlohmann::ordered_json(*r.best_solution)
                                     : nlohmann::ordered_json(nullptr);
  j["execution_state"] = r.state.render(legacy_spelling);
  if (include_timing) j["execution_duration_seconds"] = r.duration_seconds;
  return j;
}

std::optional<std::string> extract_code(std::string_view content) {
  constexpr std::string_view kOpen = "```python";
  const std::size_t start = content.find(kOpen);
  if (start == std::string_view::npos) return std::nullopt;
  const std::size_t body = start + kOpen.size();
  const std::size_t end = content.find("```", body);
  std::string_view code = content.substr(
      body, end == std::string_view::npos ? std::string_view::npos
                                          : end - body);
  // Drop leading blank lines but keep the first code line's indentation.
  while (true) {
    const std::size_t nl = code.find('\n');
    if (nl == std::string_view::npos || !trim(code.substr(0, nl)).empty()) {
      break;
    }
    code.remove_prefix(nl + 1);
  }
  while (!code.empty() && std::isspace(static_cast<unsigned char>(code.back()))) {
    code.remove_suffix(1);
  }
  if (trim(code).empty()) return std::nullopt;
  return std::string(code);
}

std::string append_sentinel(std::string_view script) {
  std::string out(script);
  out += kSentinelFooter;
  return out;
}

std::optional<std::string> prepare_script(std::string_view content) {
  auto code = extract_code(content);
  if (!code) return std::nullopt;
  return append_sentinel(*code);
}

void classify_clean_exit(ExecutionRecord& r) {
  const std::string& out = r.raw_output;
  const std::size_t pos = out.find(kSolutionMarker);
  if (pos != std::string::npos) {
    const std::size_t from = pos + kSolutionMarker.size();
    const std::size_t eol = out.find('\n', from);
    std::string value = trim_copy(std::string_view(out).substr(
        from, eol == std::string::npos ? std::string::npos : eol - from));
    if (parse_finite_real(value)) {
      r.best_solution = std::move(value);
      r.state = ExecutionState::of(ExecutionStatus::BestSolutionFound);
      return;
    }
    // A marker without a number is not a usable solution.
    r.best_solution.reset();
    r.state = ExecutionState::of(ExecutionStatus::OutOfExpectation);
    return;
  }
  if (out.find(kNoBestSolution) != std::string::npos) {
    r.best_solution = std::string(kNoBestSolution);
    r.state = ExecutionState::of(ExecutionStatus::NoBestSolutionFound);
    return;
  }
  r.best_solution.reset();
  r.state = ExecutionState::of(ExecutionStatus::OutOfExpectation);
}

std::filesystem::path resolve_interpreter(const std::string& interpreter) {
  if (interpreter.empty()) throw SandboxSetupError("empty interpreter");
  auto executable = [](const std::filesystem::path& p) {
    return ::access(p.c_str(), X_OK) == 0 &&
           !std::filesystem::is_directory(p);
  };
  if (interpreter.find('/') != std::string::npos) {
    if (executable(interpreter)) return std::filesystem::absolute(interpreter);
    throw SandboxSetupError("interpreter not executable: " + interpreter);
  }
  const char* path = std::getenv("PATH");
  std::string_view rest = path ? path : "/usr/local/bin:/usr/bin:/bin";
  while (true) {
    const std::size_t colon = rest.find(':');
    std::string_view dir = rest.substr(0, colon);
    if (!dir.empty()) {
      std::filesystem::path candidate = std::filesystem::path(dir) / interpreter;
      if (executable(candidate)) return candidate;
    }
    if (colon == std::string_view::npos) break;
    rest.remove_prefix(colon + 1);
  }
  throw SandboxSetupError("interpreter not found on PATH: " + interpreter);
}

ExecutionRecord execute(const std::string& script,
                        const SandboxConfig& config) {
  const std::filesystem::path interpreter =
      resolve_interpreter(config.interpreter);

  std::error_code ec;
  std::filesystem::create_directories(config.workdir, ec);
  if (ec) {
    throw SandboxSetupError("cannot create workdir " +
                            config.workdir.string() + ": " + ec.message());
  }
  const std::filesystem::path workdir =
      std::filesystem::absolute(config.workdir);

  std::string file_template = (workdir / "tmpXXXXXX.py").string();
  FdGuard script_fd{::mkstemps(file_template.data(), 3)};
  if (script_fd.fd < 0) throw SandboxSetupError(sys_error("mkstemps"));
  PathGuard script_guard{file_template};
  for (std::size_t off = 0; off < script.size();) {
    const ssize_t n =
        ::write(script_fd.fd, script.data() + off, script.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw SandboxSetupError(sys_error("write " + file_template));
    }
    off += static_cast<std::size_t>(n);
  }
  script_fd.reset();

  std::string scratch_template = (workdir / "runXXXXXX").string();
  if (::mkdtemp(scratch_template.data()) == nullptr) {
    throw SandboxSetupError(sys_error("mkdtemp"));
  }
  PathGuard scratch_guard{scratch_template};

  // Everything the child needs is built before fork.
  const std::string interp = interpreter.string();
  std::vector<std::string> env_strings =
      child_environment(config, scratch_template);
  std::vector<char*> argv{const_cast<char*>(interp.c_str()),
                          file_template.data(), nullptr};
  std::vector<char*> envp;
  for (auto& e : env_strings) envp.push_back(e.data());
  envp.push_back(nullptr);

  int out_pipe[2], err_pipe[2], exec_pipe[2];
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) {
    throw SandboxSetupError(sys_error("pipe"));
  }
  FdGuard out_r{out_pipe[0]}, out_w{out_pipe[1]};
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    throw SandboxSetupError(sys_error("pipe"));
  }
  FdGuard err_r{err_pipe[0]}, err_w{err_pipe[1]};
  if (::pipe2(exec_pipe, O_CLOEXEC) != 0) {
    throw SandboxSetupError(sys_error("pipe"));
  }
  FdGuard exec_r{exec_pipe[0]}, exec_w{exec_pipe[1]};

  const auto start = Clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) throw SandboxSetupError(sys_error("fork"));
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(out_w.fd, STDOUT_FILENO);
    ::dup2(err_w.fd, STDERR_FILENO);
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    int err = 0;
    if (::chdir(scratch_template.c_str()) == 0) {
      ::execve(argv[0], argv.data(), envp.data());
    }
    err = errno;
    [[maybe_unused]] ssize_t ignored = ::write(exec_w.fd, &err, sizeof err);
    ::_exit(127);
  }
  ::setpgid(pid, pid);  // also done in the child; whichever runs first wins
  out_w.reset();
  err_w.reset();
  exec_w.reset();

  int exec_errno = 0;
  ssize_t got;
  do {
    got = ::read(exec_r.fd, &exec_errno, sizeof exec_errno);
  } while (got < 0 && errno == EINTR);
  if (got == static_cast<ssize_t>(sizeof exec_errno)) {
    ::waitpid(pid, nullptr, 0);
    errno = exec_errno;
    throw SandboxSetupError(sys_error("exec " + interp));
  }

  ExecutionRecord record;
  record.script = script;
  const auto deadline = start + config.timeout;
  bool timed_out = false;
  std::string* sinks[2] = {&record.raw_output, &record.error_output};
  FdGuard* fds[2] = {&out_r, &err_r};
  char buf[65536];
  while (out_r.fd >= 0 || err_r.fd >= 0) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - Clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd pfds[2];
    int n = 0;
    int which[2];
    for (int i = 0; i < 2; ++i) {
      if (fds[i]->fd >= 0) {
        pfds[n] = {fds[i]->fd, POLLIN, 0};
        which[n++] = i;
      }
    }
    const int rc = ::poll(pfds, n, static_cast<int>(std::min<long long>(
                                       left.count(), 1000)));
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int k = 0; k < n; ++k) {
      if (!(pfds[k].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const int i = which[k];
      const ssize_t r = ::read(fds[i]->fd, buf, sizeof buf);
      if (r > 0) {
        std::string& s = *sinks[i];
        const std::size_t room = config.max_output_bytes > s.size()
                                     ? config.max_output_bytes - s.size()
                                     : 0;
        s.append(buf, std::min(room, static_cast<std::size_t>(r)));
      } else if (r == 0 || errno != EINTR) {
        fds[i]->reset();
      }
    }
  }

  int status = 0;
  if (!timed_out) {
    // Streams closed; the child may still be running.
    while (true) {
      const pid_t w = ::waitpid(pid, &status, WNOHANG);
      if (w == pid) break;
      if (Clock::now() >= deadline) {
        timed_out = true;
        break;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
  }
  if (timed_out) {
    ::kill(-pid, SIGKILL);
    ::waitpid(pid, &status, 0);
  } else {
    ::kill(-pid, SIGKILL);  // stray grandchildren
  }
  record.duration_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();

  record.raw_output = replace_all(record.raw_output, file_template, "script.py");
  record.error_output =
      replace_all(record.error_output, file_template, "script.py");

  if (timed_out) {
    record.state = ExecutionState::of(ExecutionStatus::Timeout);
  } else if (WIFEXITED(status) && WEXITSTATUS(status) == 0) {
    classify_clean_exit(record);
  } else {
    record.state = ExecutionState::failed(record.raw_output + "\n" +
                                          record.error_output);
  }
  return record;
}

void run_batch(const std::vector<BatchItem>& items,
               const SandboxConfig& config, std::size_t max_workers,
               const BatchSink& sink) {
  std::vector<std::size_t> runnable;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].script) {
      runnable.push_back(i);
    } else {
      ExecutionRecord r;
      r.state = ExecutionState::of(ExecutionStatus::NoCode);
      r.raw_output = std::string(kNoCode);
      sink(i, r);
    }
  }
  if (runnable.empty()) return;

  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::pair<std::size_t, ExecutionRecord>> done;
  std::size_t next = 0;

  auto worker = [&] {
    while (true) {
      std::size_t idx;
      {
        std::lock_guard lock(mu);
        if (next == runnable.size()) return;
        idx = runnable[next++];
      }
      ExecutionRecord rec;
      try {
        rec = execute(*items[idx].script, config);
      } catch (const std::exception& e) {
        rec.script = *items[idx].script;
        rec.state = ExecutionState::failed(std::string("sandbox setup: ") +
                                           e.what());
      }
      {
        std::lock_guard lock(mu);
        done.emplace_back(idx, std::move(rec));
      }
      cv.notify_one();
    }
  };

  const std::size_t n_workers =
      std::max<std::size_t>(1, std::min(max_workers, runnable.size()));
  std::vector<std::jthread> pool;
  pool.reserve(n_workers);
  for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);

  for (std::size_t delivered = 0; delivered < runnable.size();) {
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return !done.empty(); });
    auto item = std::move(done.front());
    done.pop_front();
    lock.unlock();
    sink(item.first, item.second);
    ++delivered;
  }
}

std::vector<ExecutionRecord> run_batch(const std::vector<BatchItem>& items,
                                       const SandboxConfig& config,
                                       std::size_t max_workers) {
  std::vector<ExecutionRecord> out(items.size());
  run_batch(items, config, max_workers,
            [&](std::size_t i, const ExecutionRecord& r) { out[i] = r; });
  return out;
}

}  // namespace orbench
