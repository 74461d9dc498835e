#include "rdsim/errors.hpp"

#include <iostream>
#include <mutex>
#include <utility>

namespace rdsim {

namespace {

std::mutex g_handler_mutex;
std::function<void(const std::string&)> g_handler;

}  // namespace

void set_warning_handler(std::function<void(const std::string&)> handler) {
  std::lock_guard lock(g_handler_mutex);
  g_handler = std::move(handler);
}

void warn(const std::string& message) {
  std::lock_guard lock(g_handler_mutex);
  if (g_handler) {
    g_handler(message);
  } else {
    std::cerr << "warning: " << message << '\n';
  }
}

}  // namespace rdsim
