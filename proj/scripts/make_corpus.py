#!/usr/bin/env python3
"""Regenerates assets/corpus/corrupted.tsv from clean in-domain utterances.

Each line is: situation id, corrupted utterance, clean utterance. Typos are
single-character edits (substitution, deletion, insertion, transposition)
applied to words of four or more letters with a fixed seed.
"""
import random

CLEAN = {
    1: ["i want to learn computer science", "computer science",
        "i want to study physics", "where is the chemistry area",
        "how do i get to mathematics", "show me the way to biology",
        "i want to read books about history", "books on literature please",
        "economics please", "i want to learn philosophy",
        "where is the linguistics area", "i want to study astronomy",
        "show me the way to geology"],
    11: ["a book on language", "what is natural language",
         "where are the programming language books",
         "i am looking for a book on databases", "what are algorithms",
         "tell me about artificial intelligence",
         "where is the book on compilers", "books on operating systems",
         "what is software engineering", "i want books on graphics",
         "where are the books on computer networks",
         "what kinds of books are on this bookshelf"],
    113: ["books on functional programming", "what is logic programming",
          "where are the books on concurrent programming",
          "which titles do you have", "what is on this shelf",
          "a book on object-oriented languages", "what are programming languages",
          "where is the book on natural language",
          "books on programming languages", "what is natural language",
          "where are the programming language books", "a book on language"],
    1135: ["tell me about the author", "who wrote this book",
           "describe this book", "tell me about this book",
           "where is the fourth book on this publication list",
           "where is the second publication", "where is the first book on this list",
           "tell me about the author of this book", "where is this book",
           "where is the fifth book on this publication list",
           "who wrote this", "where is the third publication",
           "describe this"],
}
LETTERS = "abcdefghijklmnopqrstuvwxyz"


def corrupt_word(word, rng):
    i = rng.randrange(len(word))
    op = rng.choice(["sub", "del", "ins", "swap"])
    if op == "sub":
        return word[:i] + rng.choice(LETTERS.replace(word[i], "")) + word[i + 1:]
    if op == "del":
        return word[:i] + word[i + 1:]
    if op == "ins":
        return word[:i] + rng.choice(LETTERS) + word[i:]
    if i == len(word) - 1:
        i -= 1
    return word[:i] + word[i + 1] + word[i] + word[i + 2:]


def corrupt(utterance, rng):
    words = utterance.split()
    long_words = [i for i, w in enumerate(words) if len(w) >= 4 and "-" not in w]
    if not long_words:
        return utterance
    for i in rng.sample(long_words, min(len(long_words), rng.choice([1, 1, 2]))):
        words[i] = corrupt_word(words[i], rng)
    return " ".join(words)


def main():
    rng = random.Random(1995)
    rows = []
    for situation, utterances in CLEAN.items():
        for utterance in utterances:
            rows.append((situation, corrupt(utterance, rng), utterance))
    assert len(rows) == 50, len(rows)
    with open("assets/corpus/corrupted.tsv", "w") as out:
        out.write("# situation\tcorrupted\tclean\n")
        for row in rows:
            out.write("%d\t%s\t%s\n" % row)


if __name__ == "__main__":
    main()
