"""Builds desk_corpus.jsonl: small output-prediction programs with several tests.

Expected outputs are computed by running each program, so the file can be
regenerated at any time:

    python3 make_desk_corpus.py > desk_corpus.jsonl
"""
import json
import textwrap

PROGRAMS = []


def prog(pid, entry, code, inputs, origin="cruxeval"):
    PROGRAMS.append((pid, entry, textwrap.dedent(code).strip() + "\n", inputs, origin))


prog("sum_even", "f", """
def f(nums):
    sum = 0
    for n in nums:
        if n % 2 == 0:
            sum += n
        else:
            sum += 0
    return sum
""", ["[1, 2, 3, 4]", "[]", "[7, 8, 10, -2]"])

prog("min_possible_sum", "minPossibleSum", """
def minPossibleSum(n, target):
    arr = []
    k = 1
    while len(arr) < n:
        if target - k not in arr:
            arr.append(k)
        k += 1
    return sum(arr) % (10 ** 9 + 7)
""", ["1, 1", "2, 3", "3, 3"], "livecodebench")

prog("min_possible_sum_set", "minPossibleSum", """
def minPossibleSum(n:int, target:int)->int:
    i = 1
    arr = {1}
    while len(arr) < n:
        i += 1
        if target - i not in arr:
            arr.add(i)
    return sum(arr)
""", ["n = 1, target = 1", "n = 2, target = 3", "n = 3, target = 3"], "livecodebench")

prog("count_vowels", "f", """
def f(text):
    count = 0
    for ch in text:
        if ch in 'aeiou':
            count += 1
    return count
""", ["'banana'", "'xyz'", "'education'"])

prog("reverse_words", "f", """
def f(s):
    words = s.split()
    out = []
    for w in words:
        out.insert(0, w)
    return ' '.join(out)
""", ["'a b c'", "'hello'", "''"])

prog("max_run", "f", """
def f(nums):
    best = 0
    cur = 0
    prev = None
    for x in nums:
        if x == prev:
            cur += 1
        else:
            cur = 1
        prev = x
        if cur > best:
            best = cur
    return best
""", ["[1, 1, 2, 2, 2, 3]", "[]", "[5]"])

prog("dict_count", "f", """
def f(items):
    counts = {}
    for it in items:
        counts[it] = counts.get(it, 0) + 1
    return counts
""", ["['a', 'b', 'a']", "[]", "[1, 1, 1]"])

prog("clamp_list", "f", """
def f(nums, lo, hi):
    res = []
    for n in nums:
        if n < lo:
            res.append(lo)
        elif n > hi:
            res.append(hi)
        else:
            res.append(n)
    return res
""", ["[1, 5, 10], 2, 8", "[], 0, 1", "[-3, 3], -1, 1"])

prog("alternate_case", "f", """
def f(s):
    out = ''
    i = 0
    while i < len(s):
        if i % 2 == 0:
            out += s[i].upper()
        else:
            out += s[i].lower()
        i += 1
    return out
""", ["'python'", "'AB'", "''"])

prog("prefix_sums", "f", """
def f(nums):
    total = 0
    sums = []
    for v in nums:
        total += v
        sums.append(total)
    return sums
""", ["[1, 2, 3]", "[]", "[-1, 1, -1]"])

prog("second_largest", "f", """
def f(nums):
    first = second = None
    for n in nums:
        if first is None or n > first:
            second = first
            first = n
        elif n != first and (second is None or n > second):
            second = n
    return second
""", ["[3, 1, 4, 1, 5]", "[2, 2]", "[9, 7]"])

prog("is_palindrome", "f", """
def f(s):
    cleaned = [c.lower() for c in s if c.isalnum()]
    return cleaned == cleaned[::-1]
""", ["'A man, a plan'", "'racecar'", "'Was it a car'"])

prog("remove_dups", "f", """
def f(items):
    seen = set()
    out = []
    for x in items:
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out
""", ["[3, 1, 3, 2, 1]", "[]", "['a', 'a']"])

prog("fizz", "f", """
def f(n):
    out = []
    for i in range(1, n + 1):
        if i % 15 == 0:
            out.append('FizzBuzz')
        elif i % 3 == 0:
            out.append('Fizz')
        elif i % 5 == 0:
            out.append('Buzz')
        else:
            out.append(str(i))
    return out
""", ["5", "15", "0"])

prog("digit_sum", "f", """
def f(n):
    total = 0
    while n > 0:
        total += n % 10
        n //= 10
    return total
""", ["12345", "0", "909"])

prog("gcd_loop", "f", """
def f(a, b):
    while b != 0:
        a, b = b, a % b
    return a
""", ["12, 18", "7, 0", "100, 75"])

prog("bubble_sort", "f", """
def f(arr):
    arr = list(arr)
    n = len(arr)
    for i in range(n):
        for j in range(n - 1 - i):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
    return arr
""", ["[3, 2, 1]", "[1]", "[5, -1, 3, 3]"])

prog("char_positions", "f", """
def f(s, c):
    positions = []
    for idx, ch in enumerate(s):
        if ch == c:
            positions.append(idx)
    return positions
""", ["'hello', 'l'", "'abc', 'z'", "'aaa', 'a'"])

prog("merge_sorted", "f", """
def f(a, b):
    i = 0
    j = 0
    out = []
    while i < len(a) and j < len(b):
        if a[i] <= b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out
""", ["[1, 3], [2, 4]", "[], [1]", "[5], []"])

prog("count_greater", "f", """
def f(nums, k):
    c = 0
    for x in nums:
        if x > k:
            c += 1
    return c
""", ["[1, 5, 9], 4", "[], 0", "[3, 3], 3"])

prog("label_sign", "f", """
def f(n):
    if n > 0:
        return 'pos'
    else:
        if n == 0:
            return 'zero'
        return 'neg'
""", ["5", "0", "-2"])

prog("flatten", "f", """
def f(rows):
    out = []
    for row in rows:
        for v in row:
            out.append(v)
    return out
""", ["[[1, 2], [3]]", "[]", "[[], [4]]"])

prog("pairs_sum", "f", """
def f(nums, target):
    pairs = []
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if nums[i] + nums[j] == target:
                pairs.append((i, j))
    return pairs
""", ["[1, 2, 3, 4], 5", "[], 1", "[2, 2], 4"])

prog("caesar", "f", """
def f(text, shift):
    out = []
    for ch in text:
        if ch.isalpha():
            base = ord('a') if ch.islower() else ord('A')
            out.append(chr((ord(ch) - base + shift) % 26 + base))
        else:
            out.append(ch)
    return ''.join(out)
""", ["'abc', 1", "'Zz!', 2", "'', 5"])

prog("running_max", "f", """
def f(nums):
    result = []
    m = None
    for n in nums:
        if m is None or n > m:
            m = n
        result.append(m)
    return result
""", ["[1, 3, 2, 5]", "[]", "[-1, -2]"])

prog("word_lengths", "f", """
def f(sentence):
    return {w: len(w) for w in sentence.split()}
""", ["'the quick fox'", "''", "'aa aa'"])

prog("count_upper", "f", """
def f(s):
    n = 0
    for c in s:
        if c.isupper():
            n += 1
        else:
            n += 0
    return n
""", ["'HeLLo'", "'abc'", "'ABC'"])

prog("tri_numbers", "f", """
def f(n):
    out = []
    t = 0
    for k in range(1, n + 1):
        t += k
        out.append(t)
    return out
""", ["4", "0", "1"])

prog("find_index", "f", """
def f(nums, target):
    for i, v in enumerate(nums):
        if v == target:
            return i
    return -1
""", ["[4, 5, 6], 5", "[], 1", "[1, 1], 1"])

prog("collatz_len", "f", """
def f(n):
    steps = 0
    while n != 1:
        if n % 2 == 0:
            n = n // 2
        else:
            n = 3 * n + 1
        steps += 1
    return steps
""", ["6", "1", "7"])

prog("interleave", "f", """
def f(a, b):
    out = []
    for x, y in zip(a, b):
        out.append(x)
        out.append(y)
    return out
""", ["[1, 2], ['a', 'b']", "[], []", "[1], [2, 3]"])

prog("strip_chars", "f", """
def f(s, chars):
    result = ''
    for ch in s:
        if ch not in chars:
            result += ch
    return result
""", ["'hello world', 'lo'", "'', 'a'", "'abc', ''"])

prog("matrix_trace", "f", """
def f(m):
    t = 0
    for i in range(len(m)):
        t += m[i][i]
    return t
""", ["[[1, 2], [3, 4]]", "[]", "[[5]]"])

prog("group_parity", "f", """
def f(nums):
    evens = []
    odds = []
    for n in nums:
        if n % 2 == 0:
            evens.append(n)
        else:
            odds.append(n)
    return evens + odds
""", ["[1, 2, 3, 4]", "[]", "[5, 7, 8]"])

prog("longest_word", "f", """
def f(words):
    best = ''
    for w in words:
        if len(w) > len(best):
            best = w
    return best
""", ["['a', 'abc', 'ab']", "[]", "['xy', 'zw']"])

prog("power_set_size", "f", """
def f(items):
    subsets = [[]]
    for x in items:
        subsets = subsets + [s + [x] for s in subsets]
    return len(subsets)
""", ["[1, 2, 3]", "[]", "['a']"])

prog("binary_repr", "f", """
def f(n):
    if n == 0:
        return '0'
    bits = ''
    while n > 0:
        bits = str(n % 2) + bits
        n //= 2
    return bits
""", ["5", "0", "8"])

prog("vowel_ratio", "f", """
def f(s):
    v = 0
    for c in s.lower():
        if c in 'aeiou':
            v += 1
    if len(s) == 0:
        return 0.0
    return round(v / len(s), 2)
""", ["'hello'", "''", "'AEIOU'"])

prog("nested_fn", "f", """
def f(nums):
    def sq(x):
        return x * x
    total = 0
    for n in nums:
        total += sq(n)
    return total
""", ["[1, 2, 3]", "[]", "[-4]"])

prog("sorted_keys", "f", """
def f(d):
    keys = sorted(d)
    return [d[k] for k in keys]
""", ["{'b': 2, 'a': 1}", "{}", "{3: 'x', 1: 'y'}"])

prog("abs_diff", "f", """
def f(a, b):
    if a > b:
        return a - b
    else:
        return b - a
""", ["3, 10", "5, 5", "-2, -9"])

prog("tuple_swap", "f", """
def f(pairs):
    return [(b, a) for a, b in pairs]
""", ["[(1, 2), (3, 4)]", "[]", "[('x', 'y')]"])

prog("count_words_starting", "f", """
def f(text, letter):
    cnt = 0
    for word in text.split():
        if word.startswith(letter):
            cnt += 1
    return cnt
""", ["'apple avocado banana', 'a'", "'', 'a'", "'b b b', 'b'"])

prog("replace_negatives", "f", """
def f(nums):
    for i in range(len(nums)):
        if nums[i] < 0:
            nums[i] = 0
    return nums
""", ["[1, -2, 3]", "[]", "[-1, -1]"])

prog("evens_squared", "f", """
def f(nums):
    return [n * n for n in nums if n % 2 == 0]
""", ["[1, 2, 3, 4]", "[]", "[0, -2]"])

prog("find_missing", "f", """
def f(nums):
    n = len(nums) + 1
    expected = n * (n + 1) // 2
    return expected - sum(nums)
""", ["[1, 2, 4]", "[]", "[2]"])

prog("rotate_left", "f", """
def f(lst, k):
    if not lst:
        return lst
    k = k % len(lst)
    return lst[k:] + lst[:k]
""", ["[1, 2, 3, 4], 1", "[], 3", "[1, 2], 5"])

prog("char_freq_max", "f", """
def f(s):
    freq = {}
    for c in s:
        freq[c] = freq.get(c, 0) + 1
    best = None
    for c in sorted(freq):
        if best is None or freq[c] > freq[best]:
            best = c
    return best
""", ["'abracadabra'", "''", "'zzyy'"])

prog("while_countdown", "f", """
def f(n):
    out = []
    while n > 0:
        out.append(n)
        n -= 2
    return out
""", ["5", "0", "6"])

prog("sum_pairs_while", "f", """
def f(nums):
    i = 0
    total = 0
    while i < len(nums):
        total += nums[i] * (i + 1)
        i += 1
    return total
""", ["[1, 2, 3]", "[]", "[5, -5]"])

prog("string_mult", "f", """
def f(s, n):
    result = ''
    for _ in range(n):
        result += s
    return result
""", ["'ab', 3", "'x', 0", "'', 4"])

prog("nested_if", "f", """
def f(x, y):
    if x > 0:
        if y > 0:
            return 1
        else:
            return 4
    else:
        if y > 0:
            return 2
        else:
            return 3
""", ["1, 1", "-1, 1", "0, 0"])

prog("count_digits_str", "f", """
def f(s):
    d = 0
    a = 0
    for c in s:
        if c.isdigit():
            d += 1
        elif c.isalpha():
            a += 1
    return (d, a)
""", ["'a1b2c3'", "''", "'!!'"])

prog("dict_invert", "f", """
def f(d):
    out = {}
    for k, v in d.items():
        out[v] = k
    return out
""", ["{'a': 1, 'b': 2}", "{}", "{1: 1}"])

prog("list_diff", "f", """
def f(a, b):
    return [x for x in a if x not in b]
""", ["[1, 2, 3], [2]", "[], [1]", "[1, 1], []"])

prog("cumulative_product", "f", """
def f(nums):
    p = 1
    out = []
    for n in nums:
        p *= n
        out.append(p)
    return out
""", ["[1, 2, 3, 4]", "[]", "[0, 5]"])

prog("title_case", "f", """
def f(s):
    parts = []
    for w in s.split(' '):
        if w:
            parts.append(w[0].upper() + w[1:])
        else:
            parts.append(w)
    return ' '.join(parts)
""", ["'hello big world'", "''", "'a  b'"])

prog("last_occurrence", "f", """
def f(items, x):
    pos = -1
    for i in range(len(items)):
        if items[i] == x:
            pos = i
    return pos
""", ["[1, 2, 1], 1", "[], 0", "['a'], 'b'"])

prog("min_max_gap", "f", """
def f(nums):
    if len(nums) < 2:
        return 0
    return max(nums) - min(nums)
""", ["[3, 9, 1]", "[]", "[4]"])

prog("staircase", "f", """
def f(n):
    rows = []
    for i in range(1, n + 1):
        rows.append(' ' * (n - i) + '#' * i)
    return rows
""", ["3", "0", "1"])

prog("vowel_positions", "f", """
def f(s):
    return [i for i, c in enumerate(s) if c in 'aeiouAEIOU']
""", ["'Apple'", "''", "'xyz'"])

prog("count_pairs_equal", "f", """
def f(nums):
    count = 0
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if nums[i] == nums[j]:
                count += 1
    return count
""", ["[1, 1, 1]", "[]", "[1, 2, 1, 2]"])

prog("chunk_list", "f", """
def f(lst, size):
    out = []
    for i in range(0, len(lst), size):
        out.append(lst[i:i + size])
    return out
""", ["[1, 2, 3, 4, 5], 2", "[], 3", "[1], 1"])

prog("score_grade", "f", """
def f(score):
    if score >= 90:
        return 'A'
    elif score >= 80:
        return 'B'
    elif score >= 70:
        return 'C'
    else:
        return 'F'
""", ["95", "80", "12"])

prog("accumulate_str", "f", """
def f(chars):
    acc = ''
    res = []
    for c in chars:
        acc += c
        res.append(acc)
    return res
""", ["['a', 'b', 'c']", "[]", "['x']"])

prog("sum_digits_list", "f", """
def f(nums):
    out = []
    for n in nums:
        s = 0
        for d in str(abs(n)):
            s += int(d)
        out.append(s)
    return out
""", ["[12, 305]", "[]", "[-19]"])

prog("is_sorted", "f", """
def f(nums):
    for i in range(len(nums) - 1):
        if nums[i] > nums[i + 1]:
            return False
    return True
""", ["[1, 2, 2, 5]", "[]", "[3, 1]"])

prog("lcb_count_tests", "countTestedDevices", """
def countTestedDevices(batteryPercentages):
    tested = 0
    for p in batteryPercentages:
        if p - tested > 0:
            tested += 1
    return tested
""", ["batteryPercentages = [1, 1, 2, 1, 3]", "batteryPercentages = [0, 1, 2]", "batteryPercentages = [0]"], "livecodebench")

prog("lcb_distinct_diff", "distinctDifferenceArray", """
def distinctDifferenceArray(nums):
    res = []
    for i in range(len(nums)):
        res.append(len(set(nums[:i + 1])) - len(set(nums[i + 1:])))
    return res
""", ["nums = [1, 2, 3, 4, 5]", "nums = [3, 2, 3, 4, 2]", "nums = [1]"], "livecodebench")

prog("lcb_semi_ordered", "semiOrderedPermutation", """
def semiOrderedPermutation(nums):
    n = len(nums)
    a = nums.index(1)
    b = nums.index(n)
    if a < b:
        return a + (n - 1 - b)
    else:
        return a + (n - 1 - b) - 1
""", ["nums = [2, 1, 4, 3]", "nums = [2, 4, 1, 3]", "nums = [1, 3, 4, 2, 5]"], "livecodebench")

prog("lcb_max_strength", "maxStrength", """
def maxStrength(nums):
    best = None
    n = len(nums)
    for mask in range(1, 1 << n):
        prod = 1
        for i in range(n):
            if mask >> i & 1:
                prod *= nums[i]
        if best is None or prod > best:
            best = prod
    return best
""", ["nums = [3, -1, -5, 2, 5, -9]", "nums = [-4, -5, -4]", "nums = [0]"], "livecodebench")

prog("lcb_buy_choco", "buyChoco", """
def buyChoco(prices, money):
    prices = sorted(prices)
    cost = prices[0] + prices[1]
    if cost <= money:
        return money - cost
    else:
        return money
""", ["prices = [1, 2, 2], money = 3", "prices = [3, 2, 3], money = 3", "prices = [1, 1], money = 5"], "livecodebench")

prog("lcb_furthest", "furthestDistanceFromOrigin", """
def furthestDistanceFromOrigin(moves):
    left = 0
    right = 0
    blank = 0
    for m in moves:
        if m == 'L':
            left += 1
        elif m == 'R':
            right += 1
        else:
            blank += 1
    return abs(left - right) + blank
""", ["moves = 'L_RL__R'", "moves = '_R__LL_'", "moves = '_______'"], "livecodebench")

prog("lcb_sum_index_bits", "sumIndicesWithKSetBits", """
def sumIndicesWithKSetBits(nums, k):
    total = 0
    for i in range(len(nums)):
        if bin(i).count('1') == k:
            total += nums[i]
    return total
""", ["nums = [5, 10, 1, 5, 2], k = 1", "nums = [4, 3, 2, 1], k = 2", "nums = [1], k = 0"], "livecodebench")

prog("lcb_min_sum", "minimumSum", """
def minimumSum(nums):
    n = len(nums)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if nums[i] < nums[j] and nums[k] < nums[j]:
                    s = nums[i] + nums[j] + nums[k]
                    if best is None or s < best:
                        best = s
    return -1 if best is None else best
""", ["nums = [8, 6, 1, 5, 3]", "nums = [5, 4, 8, 7, 10, 2]", "nums = [6, 5, 4, 3, 4, 5]"], "livecodebench")

prog("lcb_acronym", "isAcronym", """
def isAcronym(words, s):
    t = ''
    for w in words:
        t += w[0]
    return t == s
""", ["words = ['alice', 'bob', 'charlie'], s = 'abc'", "words = ['an', 'apple'], s = 'a'", "words = ['never'], s = 'n'"], "livecodebench")

prog("lcb_last_visited", "lastVisitedIntegers", """
def lastVisitedIntegers(words):
    seen = []
    out = []
    k = 0
    for w in words:
        if w == 'prev':
            k += 1
            if k <= len(seen):
                out.append(seen[-k])
            else:
                out.append(-1)
        else:
            seen.append(int(w))
            k = 0
    return out
""", ["words = ['1', '2', 'prev', 'prev', 'prev']", "words = ['1', 'prev', '2', 'prev', 'prev']", "words = ['prev']"], "livecodebench")

prog("lcb_account_balance", "accountBalanceAfterPurchase", """
def accountBalanceAfterPurchase(purchaseAmount):
    r = purchaseAmount % 10
    if r >= 5:
        purchaseAmount += 10 - r
    else:
        purchaseAmount -= r
    return 100 - purchaseAmount
""", ["purchaseAmount = 9", "purchaseAmount = 15", "purchaseAmount = 0"], "livecodebench")

prog("lcb_count_pairs", "countPairs", """
def countPairs(nums, target):
    n = len(nums)
    c = 0
    for i in range(n):
        for j in range(i + 1, n):
            if nums[i] + nums[j] < target:
                c += 1
    return c
""", ["nums = [-1, 1, 2, 3, 1], target = 2", "nums = [-6, 2, 5, -2, -7, -1, 3], target = -2", "nums = [1], target = 0"], "livecodebench")

prog("lcb_max_sum_pair", "maxSum", """
def maxSum(nums):
    best = -1
    for i in range(len(nums)):
        for j in range(i + 1, len(nums)):
            if max(str(nums[i])) == max(str(nums[j])):
                s = nums[i] + nums[j]
                if s > best:
                    best = s
    return best
""", ["nums = [51, 71, 17, 24, 42]", "nums = [1, 2, 3, 4]", "nums = [31, 25, 72, 79, 74]"], "livecodebench")

prog("lcb_split_words", "splitWordsBySeparator", """
def splitWordsBySeparator(words, separator):
    out = []
    for w in words:
        for part in w.split(separator):
            if part:
                out.append(part)
    return out
""", ["words = ['one.two.three', 'four.five', 'six'], separator = '.'", "words = ['$easy$', '$problem$'], separator = '$'", "words = ['|||'], separator = '|'"], "livecodebench")

prog("lcb_is_good", "isGood", """
def isGood(nums):
    n = max(nums)
    expected = list(range(1, n)) + [n, n]
    return sorted(nums) == expected
""", ["nums = [2, 1, 3]", "nums = [1, 3, 3, 2]", "nums = [1, 1]"], "livecodebench")

prog("lcb_final_string", "finalString", """
def finalString(s):
    res = ''
    for c in s:
        if c == 'i':
            res = res[::-1]
        else:
            res += c
    return res
""", ["s = 'string'", "s = 'poiinter'", "s = 'a'"], "livecodebench")

prog("lcb_check_array", "checkArray", """
def checkArray(nums, k):
    diff = [0] * (len(nums) + 1)
    cur = 0
    for i in range(len(nums)):
        cur += diff[i]
        need = nums[i] - cur
        if need < 0:
            return False
        if need > 0:
            if i + k > len(nums):
                return False
            cur += need
            diff[i + k] -= need
    return True
""", ["nums = [2, 2, 3, 1, 1, 0], k = 3", "nums = [1, 3, 1, 1], k = 2", "nums = [0], k = 1"], "livecodebench")

prog("lcb_min_operations", "minOperations", """
def minOperations(nums, k):
    seen = set()
    ops = 0
    while len(seen) < k:
        x = nums.pop()
        ops += 1
        if x <= k:
            seen.add(x)
    return ops
""", ["nums = [3, 1, 5, 4, 2], k = 2", "nums = [3, 1, 5, 4, 2], k = 5", "nums = [3, 2, 5, 3, 1], k = 3"], "livecodebench")

prog("lcb_minimum_right_shifts", "minimumRightShifts", """
def minimumRightShifts(nums):
    n = len(nums)
    for s in range(n):
        rotated = nums[n - s:] + nums[:n - s]
        if rotated == sorted(nums):
            return s
    return -1
""", ["nums = [3, 4, 5, 1, 2]", "nums = [1, 3, 5]", "nums = [2, 1, 4]"], "livecodebench")

prog("lcb_max_odd_binary", "maximumOddBinaryNumber", """
def maximumOddBinaryNumber(s):
    ones = s.count('1')
    return '1' * (ones - 1) + '0' * (len(s) - ones) + '1'
""", ["s = '010'", "s = '0101'", "s = '1'"], "livecodebench")

prog("lcb_sum_counts", "sumCounts", """
def sumCounts(nums):
    total = 0
    for i in range(len(nums)):
        seen = set()
        for j in range(i, len(nums)):
            seen.add(nums[j])
            total += len(seen) ** 2
    return total
""", ["nums = [1, 2, 1]", "nums = [1, 1]", "nums = [2]"], "livecodebench")

prog("lcb_find_indices", "findIndices", """
def findIndices(nums, indexDifference, valueDifference):
    for i in range(len(nums)):
        for j in range(len(nums)):
            if abs(i - j) >= indexDifference and abs(nums[i] - nums[j]) >= valueDifference:
                return [i, j]
    return [-1, -1]
""", ["nums = [5, 1, 4, 1], indexDifference = 2, valueDifference = 4", "nums = [2, 1], indexDifference = 0, valueDifference = 0", "nums = [1, 2, 3], indexDifference = 2, valueDifference = 4"], "livecodebench")

prog("lcb_count_seniors", "countSeniors", """
def countSeniors(details):
    c = 0
    for d in details:
        if int(d[11:13]) > 60:
            c += 1
    return c
""", ["details = ['7868190130M7522', '5303914400F9211', '9273338290F4010']", "details = ['1313579440F2036', '2921522980M5644']", "details = ['9751302862F0693']"], "livecodebench")

prog("lcb_is_fascinating", "isFascinating", """
def isFascinating(n):
    s = str(n) + str(2 * n) + str(3 * n)
    return len(s) == 9 and set(s) == set('123456789')
""", ["n = 192", "n = 100", "n = 327"], "livecodebench")

prog("lcb_smallest_string", "smallestString", """
def smallestString(s):
    chars = list(s)
    i = 0
    while i < len(chars) and chars[i] == 'a':
        i += 1
    if i == len(chars):
        chars[-1] = 'z'
        return ''.join(chars)
    while i < len(chars) and chars[i] != 'a':
        chars[i] = chr(ord(chars[i]) - 1)
        i += 1
    return ''.join(chars)
""", ["s = 'cbabc'", "s = 'acbbc'", "s = 'aa'"], "livecodebench")

prog("lcb_total_distance", "distanceTraveled", """
def distanceTraveled(mainTank, additionalTank):
    dist = 0
    while mainTank >= 5:
        mainTank -= 5
        dist += 50
        if additionalTank > 0:
            additionalTank -= 1
            mainTank += 1
    return dist + mainTank * 10
""", ["mainTank = 5, additionalTank = 10", "mainTank = 1, additionalTank = 2", "mainTank = 9, additionalTank = 2"], "livecodebench")

prog("lcb_theMaximumAchievableX", "theMaximumAchievableX", """
def theMaximumAchievableX(num, t):
    return num + 2 * t
""", ["num = 4, t = 1", "num = 3, t = 2", "num = 1, t = 1"], "livecodebench")

prog("lcb_make_smallest_palindrome", "makeSmallestPalindrome", """
def makeSmallestPalindrome(s):
    chars = list(s)
    n = len(chars)
    for i in range(n // 2):
        a = chars[i]
        b = chars[n - 1 - i]
        if a != b:
            m = min(a, b)
            chars[i] = m
            chars[n - 1 - i] = m
    return ''.join(chars)
""", ["s = 'egcfe'", "s = 'abcd'", "s = 'seven'"], "livecodebench")

prog("class_helper", "f", """
class Acc:
    def __init__(self):
        self.items = []

    def add(self, x):
        self.items.append(x)
        return len(self.items)


def f(values):
    a = Acc()
    last = 0
    for v in values:
        last = a.add(v * 2)
    return (last, a.items)
""", ["[1, 2]", "[]", "[0]"])

prog("lambda_sort", "f", """
def f(pairs):
    return sorted(pairs, key=lambda p: (p[1], p[0]))
""", ["[(1, 'b'), (2, 'a')]", "[]", "[(3, 'x'), (1, 'x')]"])

prog("try_parse", "f", """
def f(tokens):
    total = 0
    for t in tokens:
        try:
            total += int(t)
        except ValueError:
            total -= 1
    return total
""", ["['1', 'x', '3']", "[]", "['a']"])

prog("walrus_filter", "f", """
def f(nums):
    out = []
    for n in nums:
        if (d := n * 2) > 4:
            out.append(d)
    return out
""", ["[1, 2, 3]", "[]", "[5, -5]"])

prog("string_format", "f", """
def f(name, n):
    parts = []
    for i in range(n):
        parts.append(f'{name}-{i:02d}')
    return ','.join(parts)
""", ["'x', 3", "'y', 0", "'', 1"])

prog("global_counter", "f", """
counter = 0


def f(n):
    global counter
    for _ in range(n):
        counter += 1
    return counter
""", ["3", "0", "1"])

prog("recursive_fact", "f", """
def f(n):
    if n <= 1:
        return 1
    else:
        return n * f(n - 1)
""", ["5", "0", "3"])

prog("zip_dict", "f", """
def f(keys, values):
    d = {}
    for k, v in zip(keys, values):
        if k in d:
            d[k] += v
        else:
            d[k] = v
    return d
""", ["['a', 'b', 'a'], [1, 2, 3]", "[], []", "['x'], [0]"])

prog("kwargs_call", "f", """
def helper(a, scale=1):
    return a * scale


def f(nums):
    total = 0
    for n in nums:
        total += helper(n, scale=2)
    return total
""", ["[1, 2]", "[]", "[-3]"])

prog("while_else_search", "f", """
def f(nums, t):
    i = 0
    while i < len(nums):
        if nums[i] == t:
            break
        i += 1
    else:
        return -1
    return i
""", ["[1, 2, 3], 2", "[], 1", "[4], 5"])

prog("continue_skip", "f", """
def f(nums):
    s = 0
    for n in nums:
        if n < 0:
            continue
        s += n
    return s
""", ["[1, -2, 3]", "[]", "[-1]"])

prog("ternary_map", "f", """
def f(nums):
    return ['big' if n > 10 else 'small' for n in nums]
""", ["[5, 50]", "[]", "[10]"])

prog("set_ops", "f", """
def f(a, b):
    common = set(a) & set(b)
    only_a = set(a) - set(b)
    return (sorted(common), sorted(only_a))
""", ["[1, 2, 3], [2, 3, 4]", "[], []", "[1], [1]"])


def run(code, entry, args):
    env = {}
    exec(code, env)
    return eval(f"{entry}({args})", env)


def main():
    for pid, entry, code, inputs, origin in PROGRAMS:
        tests = []
        for args in inputs:
            out = run(code, entry, args)
            tests.append({"input_expr": args, "expected_output": repr(out)})
        record = {
            "id": pid,
            "source": code,
            "entry_point": entry,
            "tests": tests,
            "origin": "livecodebench" if origin == "livecodebench" else "cruxeval",
        }
        print(json.dumps(record))


if __name__ == "__main__":
    main()
