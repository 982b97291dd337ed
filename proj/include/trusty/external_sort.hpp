#pragma once

#include <cstddef>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace trusty::ra {

// Private temp directory removed (recursively) on destruction.
class TempDir {
public:
    explicit TempDir(const std::filesystem::path& root);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

std::filesystem::path default_temp_root();

// Sorts canonical line groups (four '\n'-terminated lines each) under a
// memory budget. Groups are buffered until the budget is reached, then
// sorted and spilled to a run file; finish() merges all runs in one k-way
// pass and emits each distinct group once, in ascending byte order.
class ExternalSorter {
public:
    ExternalSorter(std::size_t memory_budget, const std::filesystem::path& temp_dir);

    // Throws Error if a single group does not fit the budget.
    void add(std::string group);

    void finish(const std::function<void(std::string_view)>& sink);

    std::size_t run_count() const noexcept { return runs_.size(); }

    // Approximate bytes charged against the budget for one group.
    static std::size_t footprint(std::size_t group_size) noexcept;

private:
    void spill();

    std::size_t budget_;
    std::filesystem::path dir_;
    std::vector<std::string> buffer_;
    std::size_t buffered_ = 0;
    std::vector<std::filesystem::path> runs_;
};

// Reads back groups written by concatenating line groups.
class LineGroupReader {
public:
    explicit LineGroupReader(const std::filesystem::path& path);
    ~LineGroupReader();
    LineGroupReader(const LineGroupReader&) = delete;
    LineGroupReader& operator=(const LineGroupReader&) = delete;

    // False at end of file. Throws Error on a truncated group.
    bool next(std::string& group);

private:
    bool refill();

    std::FILE* file_ = nullptr;
    std::vector<char> buf_;
    std::size_t pos_ = 0;
    std::size_t end_ = 0;
};

}  // namespace trusty::ra
