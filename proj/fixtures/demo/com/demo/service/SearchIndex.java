package com.demo.service;

import com.demo.model.Book;
import java.util.ArrayList;
import java.util.List;
import java.util.Map;
import java.util.TreeMap;

public class SearchIndex {
    private final Map<String, List<Book>> terms = new TreeMap<>();

    public void index(Book book) {
        for (String word : book.getTitle().toLowerCase().split("\\W+")) {
            if (word.length() < 3) continue;
            terms.computeIfAbsent(word, k -> new ArrayList<>()).add(book);
        }
    }

    public List<Book> query(String text) {
        List<Book> hits = null;
        outer:
        for (String word : text.toLowerCase().split("\\s+")) {
            List<Book> found = terms.get(word);
            if (found == null) {
                hits = new ArrayList<>();
                break;
            }
            if (hits == null) {
                hits = new ArrayList<>(found);
                continue;
            }
            for (int i = hits.size() - 1; i >= 0; i--) {
                if (!found.contains(hits.get(i))) {
                    hits.remove(i);
                    if (hits.isEmpty()) break outer;
                }
            }
        }
        return hits == null ? new ArrayList<>() : hits;
    }

    public int size() {
        return terms.size();
    }
}
