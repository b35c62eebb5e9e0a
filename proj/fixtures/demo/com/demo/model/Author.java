package com.demo.model;

import java.util.ArrayList;
import java.util.Collections;
import java.util.List;

public class Author extends Entity {
    private final String name;
    private final List<Book> books = new ArrayList<>();

    public Author(String id, String name) {
        super(id);
        this.name = name;
    }

    public String getName() {
        return name;
    }

    public void addBook(Book book) {
        if (!books.contains(book)) {
            books.add(book);
            touch();
        }
    }

    public List<Book> getBooks() {
        return Collections.unmodifiableList(books);
    }

    public int countByGenre(Genre genre) {
        int n = 0;
        for (Book b : books) {
            if (b.getGenre() == genre) n++;
        }
        return n;
    }
}
