package com.demo.repo;

import com.demo.model.Book;
import com.demo.model.Genre;
import java.util.ArrayList;
import java.util.List;

public class BookRepository extends InMemoryRepository<Book> {
    public List<Book> byGenre(Genre genre) {
        List<Book> out = new ArrayList<>();
        for (Book b : findAll()) {
            if (b.getGenre() == genre) {
                out.add(b);
            }
        }
        return out;
    }

    public List<Book> available() {
        List<Book> out = new ArrayList<>();
        for (Book b : findAll()) {
            if (b.isAvailable()) out.add(b);
        }
        return out;
    }

    public List<Book> byTitlePrefix(String prefix) {
        List<Book> out = new ArrayList<>();
        String p = prefix.toLowerCase();
        for (Book b : findAll()) {
            if (b.getTitle().toLowerCase().startsWith(p)) {
                out.add(b);
            }
        }
        out.sort((a, b) -> a.getTitle().compareTo(b.getTitle()));
        return out;
    }
}
