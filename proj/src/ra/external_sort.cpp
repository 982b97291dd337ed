#include "trusty/external_sort.hpp"

#include "trusty/error.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>
#include <queue>
#include <system_error>

#include <stdlib.h>

namespace trusty::ra {

namespace {

constexpr std::size_t kIoBufferSize = std::size_t{1} << 20;
constexpr int kGroupLines = 4;

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f != nullptr) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

}  // namespace

TempDir::TempDir(const std::filesystem::path& root) {
    std::error_code ec;
    std::filesystem::create_directories(root, ec);
    auto pattern = (root / "trusty-XXXXXX").string();
    if (::mkdtemp(pattern.data()) == nullptr) {
        throw IoError("cannot create temp directory under " + root.string() + ": " +
                      std::strerror(errno));
    }
    path_ = pattern;
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::filesystem::path default_temp_root() {
    if (const char* env = std::getenv("TRUSTY_TMPDIR"); env != nullptr && *env != '\0') return env;
    return std::filesystem::temp_directory_path();
}

ExternalSorter::ExternalSorter(std::size_t memory_budget, const std::filesystem::path& temp_dir)
    : budget_(memory_budget), dir_(temp_dir) {}

std::size_t ExternalSorter::footprint(std::size_t group_size) noexcept {
    return group_size + sizeof(std::string) + 16;
}

void ExternalSorter::add(std::string group) {
    auto cost = footprint(group.size());
    if (cost > budget_) {
        throw Error("statement of " + std::to_string(group.size()) +
                    " canonical bytes does not fit the memory budget of " + std::to_string(budget_) +
                    " bytes");
    }
    if (buffered_ + cost > budget_) spill();
    buffered_ += cost;
    buffer_.push_back(std::move(group));
}

void ExternalSorter::spill() {
    if (buffer_.empty()) return;
    std::sort(buffer_.begin(), buffer_.end());
    auto path = dir_ / ("run-" + std::to_string(runs_.size()));
    FilePtr out(std::fopen(path.c_str(), "wb"));
    if (!out) throw IoError("cannot create run file " + path.string() + ": " + std::strerror(errno));
    std::vector<char> iobuf(kIoBufferSize);
    std::setvbuf(out.get(), iobuf.data(), _IOFBF, iobuf.size());
    const std::string* prev = nullptr;
    for (const auto& g : buffer_) {
        if (prev != nullptr && *prev == g) continue;
        if (std::fwrite(g.data(), 1, g.size(), out.get()) != g.size()) {
            throw IoError("write failure on " + path.string());
        }
        prev = &g;
    }
    if (std::fclose(out.release()) != 0) throw IoError("write failure on " + path.string());
    runs_.push_back(std::move(path));
    buffer_.clear();
    buffer_.shrink_to_fit();
    buffered_ = 0;
}

void ExternalSorter::finish(const std::function<void(std::string_view)>& sink) {
    if (runs_.empty()) {
        std::sort(buffer_.begin(), buffer_.end());
        auto last = std::unique(buffer_.begin(), buffer_.end());
        for (auto it = buffer_.begin(); it != last; ++it) sink(*it);
        buffer_.clear();
        buffered_ = 0;
        return;
    }
    spill();

    std::vector<std::unique_ptr<LineGroupReader>> readers;
    std::vector<std::string> heads(runs_.size());
    readers.reserve(runs_.size());
    for (const auto& run : runs_) readers.push_back(std::make_unique<LineGroupReader>(run));

    auto greater = [&heads](std::size_t a, std::size_t b) { return heads[a] > heads[b]; };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(greater)> heap(greater);
    for (std::size_t i = 0; i < readers.size(); ++i) {
        if (readers[i]->next(heads[i])) heap.push(i);
    }
    std::string last;
    bool first = true;
    while (!heap.empty()) {
        auto i = heap.top();
        heap.pop();
        if (first || heads[i] != last) {
            sink(heads[i]);
            last = heads[i];
            first = false;
        }
        if (readers[i]->next(heads[i])) heap.push(i);
    }
    readers.clear();
    for (const auto& run : runs_) {
        std::error_code ec;
        std::filesystem::remove(run, ec);
    }
    runs_.clear();
}

LineGroupReader::LineGroupReader(const std::filesystem::path& path)
    : file_(std::fopen(path.c_str(), "rb")), buf_(kIoBufferSize) {
    if (file_ == nullptr) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
}

LineGroupReader::~LineGroupReader() {
    if (file_ != nullptr) std::fclose(file_);
}

bool LineGroupReader::refill() {
    end_ = std::fread(buf_.data(), 1, buf_.size(), file_);
    pos_ = 0;
    if (end_ == 0 && std::ferror(file_)) throw IoError("read failure on run file");
    return end_ > 0;
}

bool LineGroupReader::next(std::string& group) {
    group.clear();
    int lines = 0;
    while (lines < kGroupLines) {
        if (pos_ == end_ && !refill()) {
            if (lines == 0 && group.empty()) return false;
            throw Error("truncated line group in run file");
        }
        const char* begin = buf_.data() + pos_;
        auto avail = end_ - pos_;
        const void* nl = std::memchr(begin, '\n', avail);
        if (nl == nullptr) {
            group.append(begin, avail);
            pos_ = end_;
            continue;
        }
        auto n = static_cast<const char*>(nl) - begin + 1;
        group.append(begin, static_cast<std::size_t>(n));
        pos_ += static_cast<std::size_t>(n);
        ++lines;
    }
    return true;
}

}  // namespace trusty::ra
